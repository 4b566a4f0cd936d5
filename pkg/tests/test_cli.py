"""End-to-end command tests: exit codes, pinned payloads, error envelopes."""

import json

import pytest

from stabtorus.cli import main

IDENTITY_POINT = (
    '{"label": {"kind": "std", "p": 1}, "g": {"T": [[1, 0], [0, 1]], "winding": 0}}'
)


def run(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse usage failures
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_base_point(capsys):
    code, out, err = run(
        capsys,
        ["classify", "--d", "5", "--charge", "1,0,0,1", "--phi", "1", "--psi", "1/2"],
    )
    assert code == 0 and err == ""
    assert out == (
        '{"g": {"T": [[1, 0], [0, 1]], "winding": 0}, '
        '"label": {"kind": "std", "p": 0}, "schema": "stabtorus/1"}\n'
    )


def test_classify_solves_for_the_frame(capsys):
    code, out, _ = run(
        capsys,
        [
            "classify", "--d", "4", "--charge", "2,3,0,5",
            "--phi", "1", "--psi", "0.3279791303773692",
        ],
    )
    assert code == 0
    assert out == (
        '{"g": {"T": [["1/2", "-3/10"], [0, "1/5"]], "winding": 0}, '
        '"label": {"kind": "std", "p": 0}, "schema": "stabtorus/1"}\n'
    )


def test_classify_text_format(capsys):
    code, out, _ = run(
        capsys,
        [
            "classify", "--d", "4", "--charge", "2,3,0,5",
            "--phi", "1", "--psi", "0.3279791303773692", "--format", "text",
        ],
    )
    assert code == 0
    assert out == "label: std p=0\nT: [[1/2, -3/10], [0, 1/5]]\nwinding: 0\n"


def test_classify_degenerate_charge(capsys):
    code, out, _ = run(
        capsys,
        ["classify", "--d", "5", "--charge", "1,1,0,0", "--phi", "1", "--psi", "0"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["label"] == {"kind": "deg", "p": 1, "gamma": "1/4"}


def test_classify_inconsistent_phases_exit_2(capsys):
    code, out, err = run(
        capsys,
        ["classify", "--d", "4", "--charge", "2,3,0,5", "--phi", "1", "--psi", "0.9"],
    )
    assert code == 2 and out == ""
    envelope = json.loads(err)
    assert set(envelope) == {"error", "schema"}
    assert envelope["error"]["name"] == "NotNumericallyConsistent"
    assert "psi" in envelope["error"]["message"]


def test_act_negation(capsys):
    code, out, _ = run(
        capsys,
        [
            "act", "--d", "4", "--point", IDENTITY_POINT,
            "--auto", '{"T": [[-1, 0], [0, -1]], "winding": 0}',
        ],
    )
    assert code == 0
    assert out == (
        '{"g": {"T": [[-1, 0], [0, -1]], "winding": 0}, '
        '"label": {"kind": "std", "p": 1}, "schema": "stabtorus/1"}\n'
    )


def test_classify_output_feeds_act(capsys):
    code, out, _ = run(
        capsys,
        ["classify", "--d", "5", "--charge", "1,0,0,1", "--phi", "1", "--psi", "1/2"],
    )
    assert code == 0
    code, out2, _ = run(
        capsys,
        [
            "act", "--d", "5", "--point", out.strip(),
            "--auto", '{"T": [[1, 0], [0, 1]], "winding": 2}',
        ],
    )
    assert code == 0
    assert json.loads(out2)["g"]["winding"] == 2


def test_hn_two_step(capsys):
    obj = (
        '{"flags": [], "graded": {"0": {"kind": "torsion", "points": [["y", 1]]},'
        ' "-1": {"kind": "locally_free", "rank": 1}}}'
    )
    code, out, _ = run(
        capsys,
        ["hn", "--d", "4", "--point", IDENTITY_POINT, "--object", obj,
         "--format", "text"],
    )
    assert code == 0
    assert out == (
        "class (0, 1)  phase 1  stable -\n"
        "class (-1, 0)  phase 1/2  stable -\n"
    )
    code, out, _ = run(
        capsys,
        ["hn", "--d", "4", "--point", IDENTITY_POINT, "--object", obj],
    )
    factors = json.loads(out)["factors"]
    assert [f["class"] for f in factors] == [
        {"rk": 0, "chd": 1}, {"rk": -1, "chd": 0}
    ]
    assert [f["phase"] for f in factors] == [1, "1/2"]


def test_hn_malformed_object_exit_2(capsys):
    code, _, err = run(
        capsys,
        ["hn", "--d", "4", "--point", IDENTITY_POINT,
         "--object", '{"graded": {"zero": {"kind": "torsion", "points": []}}}'],
    )
    assert code == 2
    assert json.loads(err)["error"]["name"] == "DomainError"


def test_tilt_chain(capsys):
    code, out, _ = run(
        capsys,
        ["tilt-chain", "--d", "4", "--p", "2", "--check-mass", "3",
         "--format", "text"],
    )
    assert code == 0
    assert out == (
        "tilt 0: torsion-against-torsion-free\n"
        "tilt 1: degree-zero-torsion-at-level-1\n"
        "agrees with the direct heart on mass <= 3: yes\n"
    )
    code, out, _ = run(capsys, ["tilt-chain", "--d", "4", "--p", "2"])
    payload = json.loads(out)
    assert payload["agrees_with_direct"] is True
    assert payload["target_level"] == 2
    assert [t["level"] for t in payload["tilts"]] == [0, 1]


def test_spectrum_by_label(capsys):
    code, out, _ = run(capsys, ["spectrum", "--d", "4", "--label", "std:1"])
    assert code == 0
    assert out == (
        '{"schema": "stabtorus/1", "spectrum": {"complete": true, '
        '"points": ["1/2", 1], "series": [], "uncertain": []}}\n'
    )
    code, out, _ = run(
        capsys, ["spectrum", "--d", "4", "--label", "std:0", "--format", "text"]
    )
    assert out == "points: 1/2, 1\ncomplete: no\nseries ideal_sheaves: computable yes\n"


def test_spectrum_by_point_lists_families(capsys):
    code, out, _ = run(
        capsys,
        ["spectrum", "--d", "4", "--point", IDENTITY_POINT, "--format", "text"],
    )
    assert code == 0
    assert out == (
        "label: std p=1\n"
        "family skyscraper: shift 0, phase 1\n"
        "family shifted_line_bundle: shift 1, phase 1/2\n"
    )


def test_spectrum_requires_label_or_point(capsys):
    code, _, err = run(capsys, ["spectrum", "--d", "4"])
    assert code == 1
    assert "one of --label or --point" in err


def test_gamma_bounds(capsys):
    code, out, _ = run(
        capsys, ["gamma-bounds", "--d", "4", "--label", "std:1", "--gamma", "3/10"]
    )
    assert code == 0
    assert out == (
        '{"above": "1/2", "above_exact": true, "below": 0, '
        '"below_exact": true, "schema": "stabtorus/1"}\n'
    )
    code, out, _ = run(
        capsys,
        ["gamma-bounds", "--d", "4", "--label", "std:0", "--gamma", "1/10",
         "--format", "text"],
    )
    assert "(bound only)" in out and "below: 0.0779791" in out


def test_boundary_wall_and_escape(capsys):
    code, out, _ = run(capsys, ["boundary", "--d", "5", "--p", "0", "--gamma", "7/10"])
    assert code == 0
    assert out == (
        '{"schema": "stabtorus/1", "wall": {"gamma": "3/10", "kind": "deg", "p": 1}}\n'
    )
    code, out, _ = run(capsys, ["boundary", "--d", "4", "--p", "0", "--gamma", "3/10"])
    assert out == '{"reason": "twist-escape", "schema": "stabtorus/1", "wall": null}\n'
    code, out, _ = run(
        capsys,
        ["boundary", "--d", "4", "--p", "0", "--gamma", "3/10", "--format", "text"],
    )
    assert out == "no boundary: twist-escape\n"


def test_boundary_on_spectrum_exit_2(capsys):
    code, _, err = run(capsys, ["boundary", "--d", "4", "--p", "1", "--gamma", "1/2"])
    assert code == 2
    envelope = json.loads(err)
    assert envelope["error"]["name"] == "DomainError"
    assert envelope["schema"] == "stabtorus/1"


def test_orbit_graph(capsys):
    code, out, _ = run(capsys, ["orbit-graph", "--d", "3"])
    assert code == 0
    payload = json.loads(out)
    assert [n["name"] for n in payload["nodes"]] == [
        "std-0", "std-1", "std-2", "wall-1", "wall-2"
    ]
    assert payload["edges"] == [
        ["wall-1", "std-0"], ["wall-1", "std-1"],
        ["wall-2", "std-1"], ["wall-2", "std-2"],
    ]
    code, out, _ = run(capsys, ["orbit-graph", "--d", "3", "--format", "text"])
    assert out.splitlines()[:2] == ["std-0: cell, contractible", "std-1: cell, contractible"]
    assert out.splitlines()[-1] == "edge wall-2 - std-2"


def test_pi1_commands(capsys):
    code, out, _ = run(capsys, ["pi1", "--d", "5"])
    assert code == 0
    assert out == (
        '{"free_rank": 0, "generators": 4, "group": "trivial", '
        '"relations": 4, "schema": "stabtorus/1"}\n'
    )
    code, out, _ = run(capsys, ["pi1", "--d", "5", "--format", "text"])
    assert out == "group: trivial\ngenerators: 4\nrelations: 4\n"
    code, out, _ = run(capsys, ["pi1", "--d", "5", "--wall-only"])
    assert json.loads(out)["group"] == "infinite-cyclic"


def test_pi1_disconnected_exit_2(capsys):
    code, _, err = run(capsys, ["pi1", "--d", "3", "--drop", "std-1"])
    assert code == 2
    assert json.loads(err)["error"]["name"] == "Disconnected"


def test_pi1_drop_end_cell(capsys):
    code, out, _ = run(capsys, ["pi1", "--d", "3", "--drop", "std-0"])
    assert code == 0
    assert json.loads(out)["group"] == "infinite-cyclic"


def test_fiber_accepts_leading_negative_charge(capsys):
    code, out, _ = run(capsys, ["fiber", "--d", "5", "--charge", "-1,0,0,1"])
    assert code == 0
    labels = [f["label"] for f in json.loads(out)["families"]]
    assert labels == [{"kind": "std", "p": 1}, {"kind": "std", "p": 3}]


def test_fiber_text_renderings(capsys):
    code, out, _ = run(
        capsys, ["fiber", "--d", "5", "--charge", "1,1,0,0", "--format", "text"]
    )
    assert code == 0
    assert out == (
        "deg p=1 gamma=1/4: positive-dimensional\n"
        "deg p=3 gamma=1/4: positive-dimensional\n"
    )
    code, out, _ = run(
        capsys, ["fiber", "--d", "5", "--charge", "0,1,0,0", "--format", "text"]
    )
    assert out == "empty fiber: the charge is not attained\n"


def test_twist_escape_command(capsys):
    argv = [
        "twist-escape", "--d", "4", "--ideal", "1,-1", "--twist", "1,0",
        "--gamma-minus", "2/5", "--charge", "1,0,0,1",
    ]
    code, out, _ = run(capsys, argv)
    assert code == 0
    assert out == '{"n": 3, "schema": "stabtorus/1"}\n'
    code, out, _ = run(capsys, argv + ["--format", "text"])
    assert out == "escapes at n = 3\n"


def test_helix_svg_defaults_to_text(capsys):
    code, out, _ = run(capsys, ["helix-svg", "--d", "3"])
    assert code == 0
    assert out.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
    code, out2, _ = run(capsys, ["helix-svg", "--d", "3"])
    assert out == out2


def test_helix_svg_json_and_labels(capsys):
    code, out, _ = run(capsys, ["helix-svg", "--d", "3", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"schema", "svg"}
    code, out, _ = run(capsys, ["helix-svg", "--d", "3", "--no-labels"])
    assert out.count("<text") == 0


def test_helix_svg_out_file(capsys, tmp_path):
    target = tmp_path / "helix.svg"
    code, out, _ = run(capsys, ["helix-svg", "--d", "5", "--out", str(target)])
    assert code == 0
    assert out == f"wrote {target}\n"
    body = target.read_text()
    assert body.count("<ellipse") == 6 and body.count("<path") == 4


def test_helix_svg_low_dimension_exit_2(capsys):
    code, _, err = run(capsys, ["helix-svg", "--d", "2"])
    assert code == 2
    assert json.loads(err)["error"]["name"] == "DomainError"


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--d", "4", "--charge", "1,0,0,1", "--phi", "1"],
        ["nonsense", "--d", "4"],
        ["classify", "--d", "4", "--charge", "1,0,0", "--phi", "1", "--psi", "1/2"],
        ["boundary", "--d", "4", "--p", "1", "--gamma", "abc"],
        ["act", "--d", "4", "--point", "{not json", "--auto", "{}"],
        ["spectrum", "--d", "4", "--label", "weird:1"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, argv)
    assert code == 1
    assert out == ""
    assert err != ""


def test_json_outputs_are_key_sorted(capsys):
    for argv in (
        ["pi1", "--d", "4"],
        ["orbit-graph", "--d", "4"],
        ["boundary", "--d", "4", "--p", "1", "--gamma", "3/10"],
    ):
        code, out, _ = run(capsys, argv)
        assert code == 0
        payload = json.loads(out)
        assert list(payload) == sorted(payload)
        assert payload["schema"] == "stabtorus/1"
