import csv
import json
import os

import pytest

from sievelab.cache import ResultCache
from sievelab.census import (
    ConfigError,
    ExperimentConfig,
    InfeasibleError,
    census,
    exceptional_containment_check,
    sifted_class_set,
)
from sievelab.cli import main
from sievelab.curves import default_elliptic_family


class TestConfigValidation:
    def _cfg(self, **kw):
        base = dict(
            family=default_elliptic_family(),
            x_values=(10, 20),
            l_values=(5,),
            pcap=100,
        )
        base.update(kw)
        return ExperimentConfig(**base)

    def test_valid(self):
        self._cfg().validate()

    def test_x_must_increase(self):
        with pytest.raises(ConfigError):
            self._cfg(x_values=(20, 10)).validate()

    def test_infeasible_pcap(self):
        with pytest.raises(InfeasibleError):
            self._cfg(pcap=10**6).validate()

    def test_infeasible_l(self):
        with pytest.raises(InfeasibleError):
            self._cfg(l_values=(17,)).validate()


class TestCensus:
    def test_monotone_containment(self):
        fam = default_elliptic_family()
        rows, verdicts = census(fam, [10, 20], [5], 200)
        # verdicts at the small window equal the restriction of the large one
        rows_small, verdicts_small = census(fam, [10], [5], 200)
        for t, v in verdicts_small.items():
            assert verdicts[t][5] == v[5]
        assert rows[0].n_points == rows_small[0].n_points
        assert rows[0].undecided_any == rows_small[0].undecided_any

    def test_b_count_matches_heights(self):
        from sievelab.heights import enumerate_affine

        fam = default_elliptic_family()
        rows, _ = census(fam, [15], [5], 100)
        expected = len(enumerate_affine(1, 15, bad_locus=fam.bad_locus))
        assert rows[0].n_points == expected

    def test_workers_deterministic(self):
        fam = default_elliptic_family()
        rows1, _ = census(fam, [10], [5], 100, workers=1, seed=0)
        rows2, _ = census(fam, [10], [5], 100, workers=2, seed=99)
        assert rows1[0].csv_row([5]) == rows2[0].csv_row([5])


class TestClassSieving:
    def test_empty_support(self):
        fam = default_elliptic_family()
        with pytest.raises(InfeasibleError, match="empty support"):
            sifted_class_set(fam, 20, 5, (0, 1), 1000, 10)

    def test_one_prime_support_matches_direct_filter(self):
        fam = default_elliptic_family()
        rep = sifted_class_set(fam, 20, 5, (2, 1), 1000, 12)
        assert rep.support == (11,)
        # direct per-point oracle
        from sievelab.curves import ap_table, BAD_SENTINEL
        from sievelab.heights import enumerate_affine

        table = ap_table(fam, 11)
        count = 0
        for pt in enumerate_affine(1, 20, bad_locus=fam.bad_locus):
            t = pt.coords[0]
            if t.denominator % 11 == 0:
                count += 1
                continue
            ap = int(table[t.numerator * pow(t.denominator, -1, 11) % 11])
            if ap == BAD_SENTINEL or ap % 5 != 2:
                count += 1
        assert rep.count == count

    def test_containment_cross_check(self):
        fam = default_elliptic_family()
        n_undecided, failures = exceptional_containment_check(fam, 20, 5, 1000, 200)
        assert n_undecided > 0
        assert failures == []


class TestCache:
    def test_roundtrip_and_dedup(self, tmp_path):
        path = str(tmp_path / "cache.jsonl")
        c = ResultCache(path)
        c.put("fam", (2, 1), 5, -3)
        c.put("fam", (2, 1), 5, -3)  # replay ignored
        c2 = ResultCache(path)
        assert c2.get("fam", (2, 1), 5) == -3
        assert len(c2) == 1
        with open(path) as fh:
            assert len(fh.readlines()) == 1

    def test_malformed_lines_skipped(self, tmp_path):
        path = str(tmp_path / "cache.jsonl")
        with open(path, "w") as fh:
            fh.write('{"family": "f", "t": [1, 1], "p": 5, "data": 2}\n')
            fh.write("not json at all\n")
            fh.write('{"missing": "keys"}\n')
        c = ResultCache(path)
        assert len(c) == 1 and c.malformed == 2

    def test_census_replay_identical(self, tmp_path):
        fam = default_elliptic_family()
        path = str(tmp_path / "cache.jsonl")
        cache = ResultCache(path)
        rows1, _ = census(fam, [10], [5], 50, cache=cache)
        replay = ResultCache(path)
        assert len(replay) > 0
        rows2, _ = census(fam, [10], [5], 50, cache=replay)
        assert rows1[0].csv_row([5]) == rows2[0].csv_row([5])


class TestCli:
    def test_census_command(self, tmp_path):
        out = str(tmp_path / "out")
        assert main(["--x", "10", "--pcap", "50", "--out", out, "census"]) == 0
        with open(os.path.join(out, "census.csv")) as fh:
            rows = list(csv.reader(fh))
        assert rows[0][0] == "x" and rows[1][0] == "10"

    def test_goodred_and_report_idempotent(self, tmp_path):
        out = str(tmp_path / "out")
        assert main(["--x", "10", "--pcap", "50", "--out", out, "census"]) == 0
        assert main(["--x", "100", "--out", out, "goodred"]) == 0
        assert main(["--out", out, "report"]) == 0
        with open(os.path.join(out, "report.json"), "rb") as fh:
            first = fh.read()
        assert main(["--out", out, "report"]) == 0
        with open(os.path.join(out, "report.json"), "rb") as fh:
            assert fh.read() == first
        doc = json.loads(first)
        assert set(doc) == {"census.csv", "goodred.csv"}

    def test_report_missing_inputs_exit_2(self, tmp_path):
        assert main(["--out", str(tmp_path / "empty"), "report"]) == 2

    def test_infeasible_exit_3(self, tmp_path):
        out = str(tmp_path / "out")
        assert main(["--x", "10", "--pcap", "99999", "--out", out, "census"]) == 3

    def test_bad_config_exit_2(self, tmp_path):
        assert main(["--config", str(tmp_path / "nope.json"), "census"]) == 2

    def test_config_file_and_overrides(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"x": [10], "l": [5], "pcap": 50}))
        out = str(tmp_path / "out")
        assert main(["--config", str(cfg), "--out", out, "census"]) == 0

    def test_sifted_class_set_command(self, tmp_path):
        out = str(tmp_path / "out")
        rc = main(
            ["--x", "20", "--pcap", "1000", "--out", out,
             "sifted-class-set", "--l", "5", "--class", "0,1", "--Q", "200"]
        )
        assert rc == 0
        with open(os.path.join(out, "class_set_l5_tr0.json")) as fh:
            doc = json.load(fh)
        assert doc["support"][0] == 11 and doc["count"] >= 0
