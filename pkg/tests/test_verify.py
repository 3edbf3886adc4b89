import math

import pytest

from zetabounds.bounds import BoundParams, E2, E6
from zetabounds.verify import (
    SampleSpec,
    SUPPORTED_CHECKS,
    VerificationReport,
    verify_lemma,
    verify_theorem_envelope,
)


class TestLemmaSweeps:
    def test_partial_integration_clean(self):
        r = verify_lemma("2.1", SampleSpec(samples=25, seed=1))
        assert r.violations == 0
        assert r.samples > 0
        assert r.error_budget_used > 0

    @pytest.mark.parametrize("variant", ["2.2a", "2.2b", "2.2c", "2.2d"])
    def test_oscillatory_tails_clean(self, variant):
        r = verify_lemma(variant, SampleSpec(samples=10, seed=2))
        assert r.violations == 0
        assert r.min_slack > 0

    def test_vacuous_sweep(self):
        r = verify_lemma("2.2a", SampleSpec(samples=0))
        assert r.samples == 0
        assert r.violations == 0

    def test_fanout_merges_variants(self):
        r = verify_lemma("2.2", SampleSpec(samples=16, seed=3))
        assert r.samples == 16
        assert r.violations == 0
        for variant in ("2.2a", "2.2b", "2.2c", "2.2d"):
            assert variant in r.notes

    def test_mid_tail_clean(self):
        r = verify_lemma("2.4", SampleSpec(samples=10, seed=4))
        assert r.violations == 0
        assert r.min_slack > r.error_budget_used

    def test_vertex_clean(self):
        r = verify_lemma("2.5", SampleSpec(samples=1500, seed=5))
        assert r.violations == 0

    def test_curvature_clean(self):
        r = verify_lemma("4.1", SampleSpec(samples=60, seed=6))
        assert r.violations == 0
        assert r.min_slack > 0

    def test_differencing_clean(self):
        r = verify_lemma("4.3", SampleSpec(samples=40, seed=7))
        assert r.violations == 0

    def test_weight_sums_notes_strictness(self):
        r = verify_lemma("4.6", SampleSpec(ranges={"M": (1, 500)}))
        assert r.violations == 0
        assert r.samples == 4 * 500
        assert "strict inequality" in r.notes
        assert "(M^2-1)/6" in r.notes

    def test_unknown_id_rejected(self):
        with pytest.raises(ValueError):
            verify_lemma("9.9")

    def test_reports_reproducible(self):
        spec = SampleSpec(samples=15, seed=42)
        assert verify_lemma("2.5", spec) == verify_lemma("2.5", spec)
        assert verify_lemma("4.1", spec) == verify_lemma("4.1", spec)

    def test_min_slack_inputs_recorded(self):
        r = verify_lemma("4.1", SampleSpec(samples=10, seed=8))
        assert r.min_slack_inputs is not None
        assert "t" in r.min_slack_inputs

    def test_supported_listing(self):
        assert "4.6" in SUPPORTED_CHECKS and "2.2" in SUPPORTED_CHECKS

    def test_record_roundtrip(self):
        r = verify_lemma("2.5", SampleSpec(samples=5, seed=1))
        rec = r.to_record()
        assert rec["check_id"] == "2.5"
        assert rec["violations"] == 0
        assert isinstance(rec["min_slack"], float)


class TestTheoremEnvelopes:
    def test_theorem1_small_sweep(self):
        r = verify_theorem_envelope(1, (E2, 2e3), 25)
        assert r.violations == 0
        assert r.min_slack > r.error_budget_used
        assert r.max_oracle > 0

    def test_theorem2_small_sweep(self):
        r = verify_theorem_envelope(2, (E6, 2e3), 10, BoundParams())
        assert r.violations == 0
        assert r.min_slack > r.error_budget_used

    def test_boundary_single_sample(self):
        r = verify_theorem_envelope(1, (E2, E2), 1)
        assert r.samples == 1
        assert r.violations == 0
        # bound at e^2 is 22.493; the derivative there is tiny
        assert r.min_slack == pytest.approx(22.493 - r.max_oracle, abs=1e-3)

    def test_domain_validation(self):
        with pytest.raises(ValueError):
            verify_theorem_envelope(3, (E2, 100.0), 5)
        with pytest.raises(ValueError):
            verify_theorem_envelope(1, (1.0, 100.0), 5)
        with pytest.raises(ValueError):
            verify_theorem_envelope(2, (E2, 1e4), 5)  # starts below e^6
        with pytest.raises(ValueError):
            verify_theorem_envelope(1, (E2, 100.0), 0)
