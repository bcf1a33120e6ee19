from __future__ import annotations

import subprocess
import sys

import pytest

from reeslike import textio
from reeslike.certs import ElemCert
from reeslike.cli import main
from reeslike.patching import ConductorSquare
from reeslike.poly import PolyRing
from reeslike.rees import ReesCtx
from reeslike.rings import RingCtx

Z4CTX = "rees{ring=Zn:4,a=ideal[2]}"
ZCTX = "rees{ring=Z,a=ideal[2]}"


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_check_prop39(capsys):
    code, out, _ = run(["check", "--suite", "prop39", "--ctx", ZCTX, "--seed", "7", "--trials", "1000"], capsys)
    assert code == 0 and "result=pass passed=1000 failed=0" in out


def test_check_zero_trials(capsys):
    code, out, _ = run(["check", "--suite", "square", "--trials", "0"], capsys)
    assert code == 0 and "passed=0 failed=0" in out


@pytest.mark.parametrize("ctx", ["rees{ring=Zn:4", "rees{ring=Zn:4,a=ideal[x]}", "Fp:2[t]"])
def test_check_malformed_ctx(ctx, capsys):
    code, _, err = run(["check", "--suite", "square", "--ctx", ctx], capsys)
    assert code == 2 and "error" in err


def test_check_negative_trials(capsys):
    assert run(["check", "--suite", "square", "--trials", "-1"], capsys)[0] == 2


def test_reduce_direct(tmp_path, capsys):
    f = write(tmp_path, "row.txt", "row [1 + 2*t, 2*t]\n")
    code, out, _ = run(["reduce", f, "--ctx", Z4CTX, "--mode", "direct"], capsys)
    assert code == 0 and "status=FullyElementary" in out and "final_row [1, 0]" in out


def test_reduce_trivial_row_has_empty_certificate(tmp_path, capsys):
    f = write(tmp_path, "row.txt", "row [1, 0]\n")
    code, out, _ = run(["reduce", f, "--ctx", Z4CTX, "--mode", "direct"], capsys)
    assert code == 0
    assert "block cert_A\ncert ambient=rees{ring=Zn:4,a=ideal[2]} n=2\nend\n" in out


def test_reduce_integers_has_no_corner_solver(tmp_path, capsys):
    f = write(tmp_path, "row.txt", "row [1 + 2*t, 2*t, t^2]\n")
    code, _, err = run(["reduce", f, "--ctx", ZCTX, "--mode", "patched"], capsys)
    assert code == 2 and "NoCornerSolver" in err


def test_reduce_bound_violation(tmp_path, capsys):
    f = write(tmp_path, "row.txt", "row [1, 0]\n")
    code, _, err = run(["reduce", f, "--ctx", ZCTX], capsys)
    assert code == 2 and "BoundViolation" in err


def test_reduce_not_unimodular(tmp_path, capsys):
    f = write(tmp_path, "row.txt", "row [2, 2*t]\n")
    code, out, _ = run(["reduce", f, "--ctx", Z4CTX], capsys)
    assert code == 1 and "status=Failed" in out


def test_reduce_with_bad_dual(tmp_path, capsys):
    f = write(tmp_path, "row.txt", "row [1 + 2*t, 2*t]\ndual [1, 0]\n")
    assert run(["reduce", f, "--ctx", Z4CTX], capsys)[0] == 2


def test_reduce_then_verify_report(tmp_path, capsys):
    f = write(tmp_path, "row.txt", f"ambient {Z4CTX}\nrow [1 + 2*t, 2*t]\n")
    rep = str(tmp_path / "rep.txt")
    assert run(["reduce", f, "--out", rep], capsys)[0] == 0
    code, out, _ = run(["verify", "--block", "cert_A", rep, rep, rep, "--expected-key", "final_row"], capsys)
    assert code == 0 and out.startswith("verified ops=")


def _f2_files(tmp_path, cert_text):
    c = write(tmp_path, "c.txt", cert_text)
    s = write(tmp_path, "s.txt", "row [t, 1 + t]\n")
    e = write(tmp_path, "e.txt", "row [1, 0]\n")
    return c, s, e


def test_verify_hand_example(tmp_path, capsys):
    files = _f2_files(tmp_path, "cert ambient=Fp:2[t] n=2\nE 2 1 1\nE 1 2 1 + t\n")
    assert run(["verify", *files], capsys)[0] == 0


def test_verify_empty_certificate(tmp_path, capsys):
    c = write(tmp_path, "c.txt", "cert ambient=Fp:2[t] n=2\n")
    s = write(tmp_path, "s.txt", "row [t, 1 + t]\n")
    assert run(["verify", c, s, s], capsys)[0] == 0


def test_verify_out_of_range_index(tmp_path, capsys):
    files = _f2_files(tmp_path, "cert ambient=Fp:2[t] n=2\nE 3 1 1\n")
    code, _, err = run(["verify", *files], capsys)
    assert code == 2 and "MalformedCertificate" in err


def test_verify_parity_violation(tmp_path, capsys):
    c = write(tmp_path, "c.txt", f"cert ambient={ZCTX} n=2\nE 1 2 t\n")
    s = write(tmp_path, "s.txt", "row [1, 0]\n")
    assert run(["verify", c, s, s], capsys)[0] == 2


def test_verify_mismatch(tmp_path, capsys):
    files = _f2_files(tmp_path, "cert ambient=Fp:2[t] n=2\nE 2 1 1\n")
    code, out, _ = run(["verify", *files], capsys)
    assert code == 1 and out == "mismatch at 1: got 1 + t, expected 0\n"


def test_verify_matrix_left(tmp_path, capsys):
    P = PolyRing(RingCtx.modular(6))
    cert = ElemCert(P, 3, [(0, 2, P("t")), (1, 0, P("5"))])
    c = write(tmp_path, "c.txt", textio.format_cert(cert.inverse()))
    s = write(tmp_path, "s.txt", f"matrix {textio.format_matrix(cert.matrix(), P)}\n")
    e = write(tmp_path, "e.txt", "matrix [[1, 0, 0], [0, 1, 0], [0, 0, 1]]\n")
    assert run(["verify", c, s, e, "--side", "left"], capsys)[0] == 0


def _patch_file(tmp_path, ctx, c1, m2_cert, extra=""):
    sq = ConductorSquare(ctx)
    lines = [f"ambient {ctx.handle}",
             f"matrix1 {textio.format_matrix(c1.matrix(), sq.Rt)}",
             f"inverse1 {textio.format_matrix(c1.inverse().matrix(), sq.Rt)}",
             f"matrix2 {textio.format_matrix(m2_cert.matrix(), sq.Ru_bar)}",
             f"inverse2 {textio.format_matrix(m2_cert.inverse().matrix(), sq.Ru_bar)}"]
    text = "\n".join(lines) + "\n" + extra
    return write(tmp_path, "patch.txt", text)


def test_patch_gl_and_e(tmp_path, capsys):
    ctx = ReesCtx.of(RingCtx.modular(4), 2)
    sq = ConductorSquare(ctx)
    c1 = ElemCert(sq.Rt, 2, [(0, 1, sq.Rt("2*t"))])
    c2 = ElemCert(sq.Ru_bar, 2, [])
    f = _patch_file(tmp_path, ctx, c1, c2)
    code, out, _ = run(["patch", f, "--mode", "GL"], capsys)
    assert code == 0 and out.startswith("patched mode=GL")
    f = _patch_file(tmp_path, ctx, c1, c2, textio.format_block("cert1", c1) + textio.format_block("cert2", c2))
    code, out, _ = run(["patch", f, "--mode", "E"], capsys)
    assert code == 0 and "level FullyElementary" in out


def test_patch_corner_certified_exit_code(tmp_path, capsys):
    ctx = ReesCtx.of(RingCtx.integers(), 2)
    sq = ConductorSquare(ctx)
    c1 = ElemCert(sq.Rt, 2, [(1, 0, sq.Rt("t")), (0, 1, sq.Rt("2")), (1, 0, sq.Rt("-t"))])
    c2 = ElemCert(sq.Ru_bar, 2, [])
    extra = textio.format_block("cert1", c1) + textio.format_block("cert2", c2)
    f = _patch_file(tmp_path, ctx, c1, c2, extra)
    code, out, _ = run(["patch", f, "--mode", "E"], capsys)
    assert code == 3 and "level CornerCertified route=corner-only" in out


def test_patch_mismatch_fails(tmp_path, capsys):
    ctx = ReesCtx.of(RingCtx.modular(4), 2)
    sq = ConductorSquare(ctx)
    c1 = ElemCert(sq.Rt, 2, [(0, 1, sq.Rt("t"))])
    f = _patch_file(tmp_path, ctx, c1, ElemCert(sq.Ru_bar, 2, []))
    code, _, err = run(["patch", f, "--mode", "GL"], capsys)
    assert code == 1 and "ImageMismatch" in err


def test_patch_row(tmp_path, capsys):
    text = (f"ambient {Z4CTX}\nrow1 [1 + 2*t, 2*t]\ndual1 [1 + 2*t, 0]\n"
            "row2 [1, 0]\ndual2 [1, 0]\n")
    f = write(tmp_path, "rows.txt", text)
    code, out, _ = run(["patch", f, "--mode", "row"], capsys)
    assert code == 0 and "row [1 + 2*t, 2*t]" in out
    f = write(tmp_path, "rows.txt", f"ambient {Z4CTX}\nrow1 [1, 0]\n")
    assert run(["patch", f, "--mode", "row"], capsys)[0] == 2


def test_k1_command(tmp_path, capsys):
    text = ("ambient rees{ring=Fp:2,a=ideal[1]}\n"
            "matrix [[1, t^2, 0, 0], [0, 1, 0, 0], [t, t^3, 1, 0], [0, 0, 0, 1]]\n"
            "inverse [[1, t^2, 0, 0], [0, 1, 0, 0], [t, 0, 1, 0], [0, 0, 0, 1]]\n")
    f = write(tmp_path, "m.txt", text)
    code, out, _ = run(["k1", f], capsys)
    assert code == 0 and "r=3" in out and "block sigma1" in out
    assert run(["k1", f, "--size", "2"], capsys)[0] == 2
    bad = write(tmp_path, "bad.txt", text.replace("inverse [[1, t^2", "inverse [[0, t^2"))
    assert run(["k1", bad], capsys)[0] == 2


def test_missing_file(capsys):
    assert run(["reduce", "/nonexistent/row.txt"], capsys)[0] == 2


@pytest.mark.parametrize("argv", [
    ["check", "--suite", "reduce", "--ctx", "rees{ring=Zn:12,a=ideal[6]}", "--seed", "3", "--trials", "15"],
    ["check", "--suite", "square", "--ctx", ZCTX, "--seed", "11", "--trials", "50"],
])
def test_determinism_across_processes(argv, tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}.txt"
        proc = subprocess.run([sys.executable, "-m", "reeslike.cli", *argv, "--out", str(out)],
                              capture_output=True, check=True)
        outs.append((proc.stdout, out.read_bytes()))
    assert outs[0] == outs[1] and outs[0][0] == outs[0][1]
