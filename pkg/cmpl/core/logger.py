from __future__ import annotations

import json
import os
from typing import List

from cmpl.core.model import Report


class JsonResultLogger:
    def __init__(self, directory: str, init: bool = True, overwrite: bool = False):
        """
        Logger that appends every report as one json object per line to reports.json. The file is opened and closed
        for each report.
        :param directory: the directory where 'reports.json' is stored
        :param overwrite: In case the file already exists, this flag controls the behavior:
                * True:   The existing file will be overwritten.
                * False:  New reports are appended to the existing file.
        """
        os.makedirs(directory, exist_ok=True)

        self.directory = directory
        self.reports_fn = os.path.join(directory, 'reports.json')

        if init:
            try:
                with open(self.reports_fn, 'x'):
                    pass
            except FileExistsError:
                if overwrite:
                    with open(self.reports_fn, 'w'):
                        pass

    def log_report(self, report: Report) -> None:
        with open(self.reports_fn, 'a') as fh:
            fh.write(json.dumps(report.as_dict(), sort_keys=True))
            fh.write('\n')

    def load(self) -> List[Report]:
        reports = []
        with open(self.reports_fn, 'r') as report_file:
            for line in report_file:
                if line.strip():
                    reports.append(Report.from_dict(json.loads(line)))
        return reports
