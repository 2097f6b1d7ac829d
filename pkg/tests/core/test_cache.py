import json
import os
import time

import joblib

from cmpl.core.cache import ResultCache


def test_key_is_canonical():
    assert ResultCache.key({'a': 1, 'b': [1, 2]}) == ResultCache.key({'b': [1, 2], 'a': 1})
    assert ResultCache.key({'a': 1}) != ResultCache.key({'a': 2})
    assert len(ResultCache.key({})) == 64


def test_put_get(tmp_path):
    cache = ResultCache(str(tmp_path))
    key = ResultCache.key({'command': 'siegel', 'g': 2})
    assert cache.get(key) is None
    cache.put(key, {'labels': ['θ1²/π']})
    assert cache.get(key) == {'labels': ['θ1²/π']}
    assert os.path.exists(tmp_path / key[:2] / f'{key}.json')


def test_get_or_compute(tmp_path):
    cache = ResultCache(str(tmp_path))
    calls = []

    def compute():
        calls.append(1)
        return {'value': 42}

    key = ResultCache.key('x')
    assert cache.get_or_compute(key, compute) == ({'value': 42}, False)
    assert cache.get_or_compute(key, compute) == ({'value': 42}, True)
    assert len(calls) == 1


def test_get_or_compute_store_predicate(tmp_path):
    cache = ResultCache(str(tmp_path))
    key = ResultCache.key('failed')

    def keep(value):
        return value['status'] != 'FAILED'

    assert cache.get_or_compute(key, lambda: {'status': 'FAILED'}, keep) == ({'status': 'FAILED'}, False)
    assert cache.get(key) is None
    assert cache.get_or_compute(key, lambda: {'status': 'SUCCESS'}, keep) == ({'status': 'SUCCESS'}, False)
    assert cache.get(key) == {'status': 'SUCCESS'}


def test_corrupted_entry_is_recomputed(tmp_path):
    cache = ResultCache(str(tmp_path))
    key = ResultCache.key('corrupted')
    cache.put(key, {'value': 1})
    path = tmp_path / key[:2] / f'{key}.json'
    path.write_text('{"key": "')
    assert cache.get(key) is None
    assert not path.exists()

    cache.put(key, {'value': 1})
    path.write_text(json.dumps({'key': 'other', 'value': 2}))
    assert cache.get_or_compute(key, lambda: {'value': 3}) == ({'value': 3}, False)
    assert cache.get(key) == {'value': 3}


def _slow_compute(directory: str, counter: str):
    cache = ResultCache(directory)

    def compute():
        with open(counter, 'a') as fh:
            fh.write('x')
        time.sleep(0.5)
        return {'value': 'computed'}

    return cache.get_or_compute(ResultCache.key('shared'), compute)


def test_concurrent_requests_compute_once(tmp_path):
    counter = str(tmp_path / 'counter')
    directory = str(tmp_path / 'cache')
    results = joblib.Parallel(n_jobs=2)(joblib.delayed(_slow_compute)(directory, counter) for _ in range(2))
    assert [value for value, _ in results] == [{'value': 'computed'}] * 2
    assert sorted(hit for _, hit in results) == [False, True]
    with open(counter) as fh:
        assert fh.read() == 'x'
