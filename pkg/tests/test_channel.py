"""Channel model construction, derived joints and the file format."""

import json

import numpy as np
import pytest

from macfeedback import (ChannelFormatError, ErasureSpec, InputError, JointDist,
                         Mac, Pmf, erasure_extend, independent_copy_joint,
                         induced_channel, load_channel, load_channel_file,
                         save_channel, validate_mac)
from macfeedback import catalog

from _gen import random_mac


class TestPmf:
    def test_rejects_bad_sum(self):
        with pytest.raises(InputError):
            Pmf(("a", "b"), np.array([0.6, 0.6]))

    def test_rejects_negative(self):
        with pytest.raises(InputError):
            Pmf(("a", "b"), np.array([1.2, -0.2]))

    def test_clamps_float_dust(self):
        p = Pmf(("a", "b"), np.array([1.0, -1e-16]))
        assert p.probs[1] == 0.0

    def test_rejects_duplicate_labels(self):
        with pytest.raises(InputError):
            Pmf(("a", "a"), np.array([0.5, 0.5]))

    def test_immutable(self):
        p = Pmf.uniform(("a", "b"))
        with pytest.raises(ValueError):
            p.probs[0] = 0.9


class TestValidateMac:
    def test_valid_adder_is_clean(self):
        assert validate_mac(catalog.adder_mac()) == []

    def test_row_sum_violation_names_slice(self):
        pmf = catalog.adder_mac().pmf.copy()
        pmf[0, 1] = pmf[0, 1] * 0.9
        mac = Mac(("0", "1"), ("0", "1"), ("0", "1", "2"), pmf)
        report = validate_mac(mac)
        assert len(report) == 1
        assert "x1='0'" in report[0] and "x2='1'" in report[0]
        assert "-0.1" in report[0]

    def test_negative_entry_reported(self):
        pmf = catalog.adder_mac().pmf.copy()
        pmf[1, 1, 0] = -0.01
        pmf[1, 1, 2] = 1.01
        mac = Mac(("0", "1"), ("0", "1"), ("0", "1", "2"), pmf)
        report = validate_mac(mac)
        assert any("negative mass" in r for r in report)


class TestInducedChannel:
    def test_noiseless_adder_fix_zero_is_identity_like(self):
        ch = induced_channel(catalog.adder_mac(), fix_user=2, fixed_symbol="0")
        assert ch.input_alphabet == ("0", "1")
        # X2 = 0 makes Y = X1.
        assert ch.row("0")[ch.output_alphabet.index("0")] == 1.0
        assert ch.row("1")[ch.output_alphabet.index("1")] == 1.0

    def test_erasure_adder_fix_one(self):
        ch = induced_channel(catalog.erasure_adder_mac(0.5), fix_user=2,
                             fixed_symbol="1")
        out = ch.output_alphabet
        row0 = ch.row("0")
        row1 = ch.row("1")
        assert row0[out.index("1")] == 0.5 and row0[out.index("e")] == 0.5
        assert row1[out.index("2")] == 0.5 and row1[out.index("e")] == 0.5
        assert row0.sum() == pytest.approx(1.0)

    def test_unknown_symbol_rejected(self):
        with pytest.raises(InputError):
            induced_channel(catalog.adder_mac(), fix_user=2, fixed_symbol="7")


class TestIndependentCopyJoint:
    def _uniform_input(self, mac):
        table = np.full((len(mac.x1_alphabet), len(mac.x2_alphabet)), 0.25)
        return JointDist((("x1", mac.x1_alphabet), ("x2", mac.x2_alphabet)), table)

    def test_single_copy_marginalizes_back(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            mac = random_mac(rng)
            p_in = rng.dirichlet(np.ones(4)).reshape(2, 2)
            joint_in = JointDist((("x1", mac.x1_alphabet), ("x2", mac.x2_alphabet)), p_in)
            j = independent_copy_joint(mac, joint_in, copies=1)
            back = j.marginal_table(("x1", "x2"))
            assert np.abs(back - joint_in.table).max() < 1e-12

    def test_two_copies_marginalize_to_one(self):
        rng = np.random.default_rng(6)
        mac = random_mac(rng, ny=4)
        p_in = rng.dirichlet(np.ones(4)).reshape(2, 2)
        joint_in = JointDist((("x1", mac.x1_alphabet), ("x2", mac.x2_alphabet)), p_in)
        j2 = independent_copy_joint(mac, joint_in, copies=2)
        j1 = independent_copy_joint(mac, joint_in, copies=1)
        assert np.abs(j2.marginal_table(("x1", "x2", "y")) - j1.table).max() < 1e-12

    def test_deterministic_channel_copies_agree(self):
        mac = catalog.adder_mac()
        j = independent_copy_joint(mac, self._uniform_input(mac), copies=2)
        agree = sum(j.table[:, :, k, k].sum() for k in range(len(mac.y_alphabet)))
        assert agree == pytest.approx(1.0, abs=1e-12)

    def test_point_input_product_masses(self):
        # Deterministic (0, 0) input through the half-erased adder: the two
        # looks are independent coin flips between "0" and "e".
        mac = catalog.erasure_adder_mac(0.5)
        table = np.zeros((2, 2))
        table[0, 0] = 1.0
        j = independent_copy_joint(
            mac, JointDist((("x1", mac.x1_alphabet), ("x2", mac.x2_alphabet)), table),
            copies=2)
        y = mac.y_alphabet
        t = j.table[0, 0]
        assert t[y.index("0"), y.index("0")] == pytest.approx(0.25)
        assert t[y.index("e"), y.index("e")] == pytest.approx(0.25)
        assert t[y.index("0"), y.index("e")] == pytest.approx(0.25)

    def test_conditional_independence_exact(self):
        # p(x1, x2, y, y') must equal p(x1, x2) p(y|x1, x2) p(y'|x1, x2)
        # exactly: same products, same order.
        rng = np.random.default_rng(7)
        mac = random_mac(rng, ny=3)
        p_in = rng.dirichlet(np.ones(4)).reshape(2, 2)
        joint_in = JointDist((("x1", mac.x1_alphabet), ("x2", mac.x2_alphabet)), p_in)
        j = independent_copy_joint(mac, joint_in, copies=2)
        w = mac.pmf
        expect = (joint_in.table[:, :, None] * w)[:, :, :, None] * w[:, :, None, :]
        assert np.array_equal(j.table, expect)

    def test_axis_mismatch_rejected(self):
        mac = catalog.adder_mac()
        bad = JointDist((("x1", ("0", "1", "2")), ("x2", ("0", "1"))),
                        np.full((3, 2), 1 / 6))
        with pytest.raises(InputError):
            independent_copy_joint(mac, bad, copies=1)


class TestErasureExtend:
    def test_p_zero_keeps_law(self):
        mac = catalog.adder_mac()
        ext = erasure_extend(mac, ErasureSpec(0.0, "e"))
        assert ext.y_alphabet == ("0", "1", "2", "e")
        assert np.abs(ext.pmf[:, :, :3] - mac.pmf).max() == 0.0
        assert ext.pmf[:, :, 3].max() == 0.0

    def test_p_one_is_point_mass(self):
        ext = erasure_extend(catalog.adder_mac(), ErasureSpec(1.0, "e"))
        assert np.all(ext.pmf[:, :, 3] == 1.0)
        assert ext.pmf[:, :, :3].max() == 0.0

    def test_half_erased_adder_row(self):
        ext = erasure_extend(catalog.adder_mac(), ErasureSpec(0.5, "e"))
        row = ext.pmf[0, 1]
        assert row[ext.y_alphabet.index("1")] == pytest.approx(0.5)
        assert row[ext.y_alphabet.index("e")] == pytest.approx(0.5)

    def test_symbol_collision_rejected(self):
        with pytest.raises(InputError):
            erasure_extend(catalog.adder_mac(), ErasureSpec(0.5, "2"))

    def test_p_zero_preserves_downstream_measures(self):
        from macfeedback import cutset_sum_rate, single_rate_capacity

        mac = catalog.adder_mac()
        ext = erasure_extend(mac, ErasureSpec(0.0, "e"))
        assert abs(cutset_sum_rate(ext) - cutset_sum_rate(mac)) < 1e-12
        assert abs(single_rate_capacity(ext, 1).value
                   - single_rate_capacity(mac, 1).value) < 1e-12

    def test_bad_probability_rejected(self):
        with pytest.raises(InputError):
            ErasureSpec(1.5, "e")


class TestChannelFiles:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(11)
        mac = random_mac(rng, n1=2, n2=3, ny=4, name="rt")
        path = tmp_path / "ch.json"
        save_channel(mac, path)
        again = load_channel(path)
        assert again.x1_alphabet == mac.x1_alphabet
        assert again.x2_alphabet == mac.x2_alphabet
        assert again.y_alphabet == mac.y_alphabet
        assert np.abs(again.pmf - mac.pmf).max() < 1e-15
        assert again.name == "rt"

    def test_round_trip_group(self, tmp_path):
        path = tmp_path / "ch.json"
        save_channel(catalog.erasure_adder_mac(0.25), path,
                     group=catalog.erasure_adder_group())
        cf = load_channel_file(path)
        assert cf.group is not None
        assert np.array_equal(cf.group.cayley, catalog.erasure_adder_group().cayley)

    def test_row_sum_error_cites_indices(self, tmp_path):
        obj = {
            "name": "bad", "x1": ["0", "1"], "x2": ["0"], "y": ["0", "1"],
            "pmf": [[[1.0, 0.5]], [[0.5, 0.5]]],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(obj))
        with pytest.raises(ChannelFormatError, match=r"pmf\[0\]\[0\]"):
            load_channel(path)

    def test_small_row_drift_normalized(self, tmp_path):
        obj = {
            "name": "drift", "x1": ["0"], "x2": ["0"], "y": ["0", "1"],
            "pmf": [[[0.5, 0.5 + 4e-10]]],
        }
        path = tmp_path / "drift.json"
        path.write_text(json.dumps(obj))
        mac = load_channel(path)
        assert mac.pmf[0, 0].sum() == pytest.approx(1.0, abs=1e-15)

    def test_duplicate_symbol_rejected(self, tmp_path):
        obj = {
            "name": "dup", "x1": ["0"], "x2": ["0"], "y": ["e", "e"],
            "pmf": [[[0.5, 0.5]]],
        }
        path = tmp_path / "dup.json"
        path.write_text(json.dumps(obj))
        with pytest.raises(ChannelFormatError, match="duplicate symbol"):
            load_channel(path)

    def test_malformed_json_rejected(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ not json")
        with pytest.raises(ChannelFormatError, match="malformed JSON"):
            load_channel(path)

    def test_missing_field_rejected(self, tmp_path):
        path = tmp_path / "missing.json"
        path.write_text(json.dumps({"x1": ["0"], "x2": ["0"], "y": ["0"]}))
        with pytest.raises(ChannelFormatError, match="pmf"):
            load_channel(path)

    def test_negative_probability_rejected(self, tmp_path):
        obj = {
            "x1": ["0"], "x2": ["0"], "y": ["0", "1"],
            "pmf": [[[-0.1, 1.1]]],
        }
        path = tmp_path / "neg.json"
        path.write_text(json.dumps(obj))
        with pytest.raises(ChannelFormatError, match="negative"):
            load_channel(path)


class TestJointDist:
    def test_marginal_order_respected(self):
        rng = np.random.default_rng(3)
        table = rng.dirichlet(np.ones(24)).reshape(2, 3, 4)
        j = JointDist((("a", ("0", "1")), ("b", ("0", "1", "2")),
                       ("c", ("0", "1", "2", "3"))), table)
        swapped = j.marginal_table(("c", "a"))
        direct = j.table.sum(axis=1).T
        assert np.abs(swapped - direct).max() == 0.0

    def test_condition_on_zero_mass_rejected(self):
        table = np.array([[0.5, 0.5], [0.0, 0.0]])
        j = JointDist((("a", ("0", "1")), ("b", ("0", "1"))), table)
        with pytest.raises(InputError):
            j.condition("a", "1")

    def test_condition_normalizes(self):
        table = np.array([[0.2, 0.2], [0.3, 0.3]])
        j = JointDist((("a", ("0", "1")), ("b", ("0", "1"))), table)
        cond = j.condition("a", "1")
        assert cond.table.sum() == pytest.approx(1.0)
        assert cond.table[0] == pytest.approx(0.5)
