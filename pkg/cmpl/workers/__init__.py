from cmpl.workers.period_worker import PeriodWorker
