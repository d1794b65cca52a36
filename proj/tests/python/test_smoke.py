# Copyright 2026 The circlaw Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import circlaw


def test_sample_is_deterministic_and_standardized():
    x = circlaw.sample_matrix("complex-gaussian", 200, seed=1)
    y = circlaw.sample_matrix("complex-gaussian", 200, seed=1)
    assert x.dtype == np.complex128 and x.shape == (200, 200)
    assert np.array_equal(x, y)
    assert abs(np.mean(np.abs(x) ** 2) - 1.0) < 0.02
    r = circlaw.sample_matrix("rademacher", 30, seed=2)
    assert set(np.unique(r.real)) <= {-1.0, 1.0} and not r.imag.any()


def test_spectral_against_numpy():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(20, 20)) + 1j * rng.normal(size=(20, 20))
    s = circlaw.singular_values(a)
    assert np.allclose(s, np.linalg.svd(a, compute_uv=False), rtol=1e-12)
    ev = np.array(circlaw.eigenvalues(a))
    assert np.all(np.diff(np.abs(ev)) <= 1e-12)
    assert np.allclose(np.sort_complex(ev), np.sort_complex(np.linalg.eigvals(a)), atol=1e-9)
    summary = circlaw.summarize(a)
    assert summary.log_abs_det == pytest.approx(np.linalg.slogdet(a)[1], rel=1e-12)
    assert not summary.singular


def test_perturbation_and_delta():
    x = circlaw.sample_matrix("complex-gaussian", 50, seed=3)
    m = circlaw.build_perturbation(circlaw.PerturbationSpec("all-ones"), 50)
    assert np.all(m == 1.0)
    pair = circlaw.assemble(x, m)
    assert pair.perturbation_rank == 1
    d = circlaw.delta_at(pair, 0.5 + 0.5j)
    assert d.consistent() and not d.singular_flag
    assert d.ks <= 1 / 50 + 1e-12
    assert abs(d.delta - d.delta_log_integral) <= 1e-8 * abs(d.delta) + 1e-12
    scan = circlaw.delta_scan(pair, circlaw.ZGrid([-1, 1], [-1, 1], 1.0))
    assert len(scan) == 9 and all(p.consistent() for p in scan)


def test_measures():
    assert circlaw.kolmogorov_distance([1, 2], [1, 3]) == 0.5
    assert circlaw.log_integral_diff([1.0], [math.e]) == pytest.approx(-1.0)
    lhs, rhs, bound = circlaw.ibp_difference(lambda t: t, lambda t: 1.0, [0.0], [1.0], 0.0, 1.0)
    assert lhs == -1.0 and rhs == pytest.approx(-1.0) and bound == pytest.approx(1.0)
    ring = [complex(math.cos(t), math.sin(t)) for t in (0, math.pi / 2, math.pi, 3 * math.pi / 2)]
    assert circlaw.angular_disk_distance(ring) == 0.25
    assert circlaw.radial_disk_distance([0j]) == 1.0


def test_constant_case_and_green():
    c = circlaw.constant_case(200, "complex-gaussian", 1)
    assert abs(c.lambda1 - math.sqrt(200)) <= 3 and abs(c.lambda2) <= 2.5
    lhs, rhs, residual = circlaw.green_identity_residual([0j], circlaw.radial_bump(0j, 0.5), 1e-2)
    assert lhs == 1.0 and residual <= 1e-2


def test_lemma_suite():
    report = circlaw.run_lemma_suite(50, 7)
    assert report["trials"] == 50 and report["total_violations"] == 0


def test_config_and_run(tmp_path):
    text = (
        '{"name":"py","dims":[20,30],"distribution":"complex-gaussian",'
        '"perturbation":{"kind":"all-ones"},"z_grid":{"re_range":[0,1],"im_range":[0,0],"step":1},'
        '"replicates":2,"master_seed":5,"output_dir":"%s"}' % tmp_path
    )
    config = circlaw.parse_config(text)
    assert circlaw.parse_config(circlaw.serialize_config(config)) == config
    report = circlaw.run_experiment(config, workers=2)
    assert report.delta_rows == 2 * 2 * 2
    assert report.inconsistent_points() == 0
    assert (tmp_path / "delta.csv").read_text() == report.delta_csv()
    assert (tmp_path / "report.json").read_text() == report.report_json()


def test_errors_carry_codes():
    with pytest.raises(circlaw.Error) as err:
        circlaw.sample_matrix("complex-gaussian", 0, seed=1)
    assert err.value.code == "invalid-dimension"
    with pytest.raises(circlaw.Error) as err:
        circlaw.parse_config('{"name":"x","rankk":1}')
    assert err.value.code == "validation" and "rankk" in str(err.value)
    with pytest.raises(circlaw.Error) as err:
        circlaw.kolmogorov_distance([], [1.0])
    assert err.value.code == "invalid-measure"
