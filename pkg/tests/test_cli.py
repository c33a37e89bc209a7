"""CLI subcommands: CSV schemas, exit codes, determinism."""

import math

import pytest

from bpfhelm.cli import main
from bpfhelm.reference import clear_reference_cache


def _run(tmp_path, args, name="out.csv"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    text = out.read_text() if out.exists() else ""
    return code, text


class TestExactness:
    def test_success(self, tmp_path):
        code, text = _run(tmp_path, ["exactness", "--k", str(2.0**7), "--n", "8"])
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "k,n,h,err_linf_abs"
        fields = lines[1].split(",")
        assert int(fields[1]) == 8
        assert float(fields[3]) <= 1e-12

    def test_any_admissible_grid(self, tmp_path):
        code, text = _run(tmp_path, ["exactness", "--k", str(2.0**5), "--n", "4"])
        assert code == 0
        assert float(text.strip().splitlines()[1].split(",")[3]) <= 1e-12

    def test_nyquist_guard_exit_code(self, tmp_path):
        code = main(["exactness", "--k", str(math.pi * 8), "--n", "8",
                     "--out", str(tmp_path / "x.csv")])
        assert code == 3


class TestConvergence:
    def test_smooth_csv(self, tmp_path):
        code, text = _run(tmp_path, [
            "convergence", "--k", "32", "--n-list", "243,729,2187",
            "--benchmark", "smooth", "--scheme", "bpf"])
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "k,h,err_linf_rel,err_v_rel"
        assert len([ln for ln in lines if not ln.startswith("#")]) == 4
        footers = [ln for ln in lines if ln.startswith("# rate_fit")]
        assert len(footers) == 2
        rate_v = float(footers[1].split(",")[2])
        assert 1.9 <= rate_v <= 2.1

    def test_floored_footer(self, tmp_path):
        code, text = _run(tmp_path, [
            "convergence", "--k", "128", "--n-list", "8,16",
            "--benchmark", "planewave"])
        assert code == 0
        assert "floored" in text

    def test_h_list_accepted(self, tmp_path):
        code, text = _run(tmp_path, [
            "convergence", "--k", "32", "--h-list", "0.04,0.02",
            "--benchmark", "smooth"])
        assert code == 0
        assert "err_v_rel" in text

    def test_box_benchmark_uses_fine_reference(self, tmp_path):
        clear_reference_cache()
        code, text = _run(tmp_path, [
            "convergence", "--k", "32", "--n-list", "27,81",
            "--benchmark", "box", "--n", "2187"])
        assert code == 0
        body = [ln for ln in text.strip().splitlines()
                if ln and not ln.startswith("#") and not ln.startswith("k,")]
        errs = [float(ln.split(",")[3]) for ln in body]
        assert errs[0] > errs[1] > 0.0

    def test_missing_lists_usage_error(self, tmp_path):
        code = main(["convergence", "--k", "32",
                     "--out", str(tmp_path / "x.csv")])
        assert code == 2


class TestTable:
    def test_matrix_layout(self, tmp_path):
        clear_reference_cache()
        code, text = _run(tmp_path, [
            "table", "--k-list", "32,64", "--h-list", "0.03125,0.015625",
            "--n", "4096"])
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0].startswith("# reference,exact")
        assert lines[1].startswith("k\\h,")
        # two k rows after the header
        assert len(lines[1].split(",")) == 3
        fine_idx = lines.index("# reference,fine,norm,v")
        assert fine_idx > 0
        diag_lines = [ln for ln in lines if ln.startswith("# diagonal_kh")]
        assert len(diag_lines) == 3  # kh in {0.5, 1, 2}

    def test_deterministic_output(self, tmp_path):
        clear_reference_cache()
        _, first = _run(tmp_path, [
            "table", "--k-list", "32", "--h-list", "0.03125", "--n", "1024"],
            name="a.csv")
        clear_reference_cache()
        _, second = _run(tmp_path, [
            "table", "--k-list", "32", "--h-list", "0.03125", "--n", "1024"],
            name="b.csv")
        assert first == second

    def test_requires_h_or_n_list(self, tmp_path):
        code = main(["table", "--k-list", "32", "--out", str(tmp_path / "x.csv")])
        assert code == 2

    def test_resonant_wavenumber_guard_exit(self, tmp_path):
        # sine2 particular solution blows up at k = 2*pi
        code = main(["table", "--k-list", str(2.0 * math.pi), "--h-list", "0.03125",
                     "--out", str(tmp_path / "x.csv")])
        assert code == 3


class TestCompare:
    def test_rows_per_scheme(self, tmp_path):
        code, text = _run(tmp_path, [
            "compare", "--k-list", "32,64", "--n-list", "64,128"])
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "scheme,k,h,kh,err_linf_rel"
        body = [ln for ln in lines[1:] if ln]
        assert len(body) == 6  # 3 schemes x 2 pairs
        schemes = {ln.split(",")[0] for ln in body}
        assert schemes == {"bpf", "fd", "fd-dc"}
        # kh column constant at 0.5
        for ln in body:
            assert float(ln.split(",")[3]) == pytest.approx(0.5)

    def test_single_pair(self, tmp_path):
        code, text = _run(tmp_path, ["compare", "--k-list", "32", "--n-list", "64"])
        assert code == 0
        assert len([ln for ln in text.strip().splitlines()[1:] if ln]) == 3

    def test_mismatched_lists_usage_error(self, tmp_path):
        code = main(["compare", "--k-list", "32,64", "--n-list", "64",
                     "--out", str(tmp_path / "x.csv")])
        assert code == 2

    def test_ordering_at_fixed_resolution(self, tmp_path):
        code, text = _run(tmp_path, ["compare", "--k-list", "64", "--n-list", "128"])
        assert code == 0
        errs = {ln.split(",")[0]: float(ln.split(",")[4])
                for ln in text.strip().splitlines()[1:] if ln}
        assert errs["bpf"] < errs["fd-dc"] < errs["fd"]

    def test_classical_error_grows_with_k_at_fixed_resolution(self, tmp_path):
        # same kh = 1/2 at both wavenumbers; dispersion accumulates with k
        code, text = _run(tmp_path, [
            "compare", "--k-list", "32,512", "--n-list", "64,1024"])
        assert code == 0
        fd_errs = [float(ln.split(",")[4]) for ln in text.strip().splitlines()[1:]
                   if ln.startswith("fd,")]
        bpf_errs = [float(ln.split(",")[4]) for ln in text.strip().splitlines()[1:]
                    if ln.startswith("bpf,")]
        assert fd_errs[1] > fd_errs[0]      # classical deteriorates
        assert bpf_errs[1] < bpf_errs[0]    # phase-fitted improves


class TestVerify:
    def test_residual_suite_passes(self, tmp_path):
        code, text = _run(tmp_path, ["verify", "residuals"])
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "status,check,value,bound,detail"
        assert all(ln.startswith("PASS") for ln in lines[1:] if not ln.startswith("#"))
        assert lines[-1].startswith("# summary,residuals")

    def test_identities_suite_passes(self, tmp_path):
        code, text = _run(tmp_path, ["verify", "identities"])
        assert code == 0
        assert "bernoulli_reflection" in text

    def test_unknown_suite_usage_error(self):
        assert main(["verify", "nonsense"]) == 2


class TestParser:
    def test_unknown_command(self):
        assert main(["frobnicate"]) == 2

    def test_stdout_default(self, capsys):
        code = main(["exactness", "--k", "128", "--n", "8"])
        assert code == 0
        assert "err_linf_abs" in capsys.readouterr().out

    def test_module_entry_point(self):
        import subprocess
        import sys
        proc = subprocess.run(
            [sys.executable, "-m", "bpfhelm.cli", "exactness", "--k", "128", "--n", "8"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "err_linf_abs" in proc.stdout
