"""Scenario files: named sets, checks to run, renders to write.

A scenario is a JSON object with ``"schema": "addcomp/1"``.  Sets are given
by descriptor (see :mod:`addcomp.serialize`) or by catalog id string.  The
runner executes checks in order, compares each against its optional
``expect`` field and writes a deterministic report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from . import engine
from .group import GroupError, GroupSpec, Window
from .moderation import ball_moderation, check_moderation, pair_bound, poly_moderation
from .render import Layer, Slice, audit, render_ascii, render_svg
from .serialize import DescriptorError, dumps, function_from_json, load_json, set_from_json
from .sets import Finite

SCHEMA_ID = "addcomp/1"

EXIT_OK = 0
EXIT_FAIL = 2
EXIT_UNVERIFIED = 3
EXIT_SCHEMA = 64

_set_ref = {"oneOf": [{"type": "string"}, {"type": "object", "required": ["kind"]}]}
_window = {"type": "string", "pattern": r"^\s*-?\d+\s*\.\.\s*-?\d+\s*(,\s*-?\d+\s*\.\.\s*-?\d+\s*)*$"}
_radius = {"oneOf": [{"const": "certified"}, {"type": "integer", "minimum": 0}]}

SCHEMA = {
    "type": "object",
    "required": ["schema", "checks"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "name": {"type": "string"},
        "description": {"type": "string"},
        "group": {"oneOf": [{"type": "string"},
                            {"type": "object", "required": ["rank"],
                             "properties": {"rank": {"type": "integer", "minimum": 0},
                                            "torsion": {"type": "array", "items": {"type": "integer",
                                                                                   "minimum": 1}}}}]},
        "sets": {"type": "object", "additionalProperties": _set_ref},
        "window": _window,
        "radius": _radius,
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["type"],
                "properties": {
                    "type": {"enum": ["complement", "minimality", "moderation", "shrink"]},
                    "name": {"type": "string"},
                    "W": {"type": "string"},
                    "C": {"type": "string"},
                    "envelope": {"type": "string"},
                    "window": _window,
                    "base_window": _window,
                    "radius": _radius,
                    "witness_bound": {"type": "integer", "minimum": 0},
                    "u": {"type": "object"},
                    "v": {"type": "object"},
                    "method": {"enum": ["ball", "poly", "given"]},
                    "bound": {"enum": ["pair", "method", "none"]},
                    "x0_window": _window,
                    "probe_window": _window,
                    "rounds": {"type": "integer", "minimum": 0},
                    "removal_order": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                    "cumulative": {"type": "boolean"},
                    "expect": {"type": "string"},
                    "expect_witnesses": {"type": "array",
                                         "items": {"type": "array", "minItems": 2, "maxItems": 2}},
                },
                "additionalProperties": False,
            },
        },
        "renders": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "sets"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string", "pattern": r"^[A-Za-z0-9_.-]+$"},
                    "title": {"type": "string"},
                    "sets": {"type": "array", "items": {"type": "string"}},
                    "window": _window,
                    "slice": {"type": "string"},
                    "formats": {"type": "array", "items": {"enum": ["ascii", "svg", "png", "csv"]}},
                },
            },
        },
    },
}


class ScenarioError(ValueError):
    """Schema or reference violation; maps to exit code 64."""


@dataclass
class CheckResult:
    name: str
    type: str
    status: str
    passed: bool
    exit_code: int
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "type": self.type, "status": self.status, "passed": self.passed,
                **self.detail}


@dataclass
class ScenarioReport:
    name: str
    checks: list[CheckResult]
    renders: dict = field(default_factory=dict)
    files: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        codes = [c.exit_code for c in self.checks]
        if EXIT_FAIL in codes:
            return EXIT_FAIL
        if EXIT_UNVERIFIED in codes:
            return EXIT_UNVERIFIED
        return EXIT_OK

    def to_json(self) -> dict:
        return {"schema": SCHEMA_ID, "scenario": self.name, "exit_code": self.exit_code,
                "checks": [c.to_json() for c in self.checks], "renders": self.renders}


# --------------------------------------------------------------------------
# loading


def validate(data) -> None:
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ScenarioError(f"schema violation at {where}: {exc.message}") from exc


@dataclass
class Scenario:
    data: dict
    name: str
    group: GroupSpec | None
    sets: dict
    window: Window | None
    radius: object

    @classmethod
    def from_json(cls, data) -> "Scenario":
        validate(data)
        group = None
        if "group" in data:
            g = data["group"]
            try:
                group = GroupSpec.parse(g) if isinstance(g, str) else GroupSpec.from_json(g)
            except GroupError as exc:
                raise ScenarioError(f"bad group: {exc}") from exc
        sets = {}
        for key, desc in data.get("sets", {}).items():
            try:
                if isinstance(desc, str):
                    desc = {"kind": "catalog", "id": desc}
                sets[key] = set_from_json(desc, group)
            except DescriptorError as exc:
                raise ScenarioError(f"set {key!r}: {exc}") from exc
        window = _window_of(data.get("window"), group) if "window" in data else None
        sc = cls(data, data.get("name", "scenario"), group, sets, window, data.get("radius", "certified"))
        sc._check_refs()
        return sc

    @classmethod
    def load(cls, path) -> "Scenario":
        try:
            data = load_json(path)
        except (OSError, ValueError) as exc:
            raise ScenarioError(f"cannot read scenario {path}: {exc}") from exc
        return cls.from_json(data)

    def _check_refs(self):
        for i, chk in enumerate(self.data["checks"]):
            for key in ("W", "C", "envelope"):
                if key in chk and chk[key] not in self.sets:
                    raise ScenarioError(f"check {i}: unknown set {chk[key]!r}")
            t = chk["type"]
            need = {"complement": ("W", "C"), "minimality": ("W", "C"), "shrink": ("W", "C"),
                    "moderation": ("u",)}[t]
            for key in need:
                if key not in chk:
                    raise ScenarioError(f"check {i} ({t}) needs {key!r}")
            if t in ("complement", "shrink") and "window" not in chk and self.window is None:
                raise ScenarioError(f"check {i} ({t}) needs a window")
            if t == "moderation" and ("x0_window" not in chk or "probe_window" not in chk):
                raise ScenarioError(f"check {i} (moderation) needs x0_window and probe_window")
            if t == "shrink" and not isinstance(self.sets[chk["C"]], Finite):
                raise ScenarioError(f"check {i} (shrink) needs a finite complement")
        for r in self.data.get("renders", []):
            for s in r["sets"]:
                if s not in self.sets:
                    raise ScenarioError(f"render {r['name']!r}: unknown set {s!r}")
            if "window" not in r and self.window is None:
                raise ScenarioError(f"render {r['name']!r} needs a window")


def _window_of(text: str, group: GroupSpec | None) -> Window:
    try:
        w = Window.parse(text)
    except GroupError as exc:
        raise ScenarioError(str(exc)) from exc
    if group is not None:
        if len(w.bounds) != group.rank:
            raise ScenarioError(f"window {text!r} does not match rank {group.rank}")
        w = w.for_group(group)
    return w


def _radius_of(r):
    return r if r == "certified" else int(r)


# --------------------------------------------------------------------------
# running


def _status_exit(status: str) -> int:
    if status in (engine.COVERED, engine.MINIMAL, "ok", "persists"):
        return EXIT_OK
    if status == engine.UNVERIFIED:
        return EXIT_UNVERIFIED
    return EXIT_FAIL


def _norm(status: str) -> str:
    return "".join(ch for ch in status.lower() if ch.isalnum())


def _finish(chk, name, status, detail) -> CheckResult:
    expect = chk.get("expect")
    if expect is None:
        code = _status_exit(status)
        return CheckResult(name, chk["type"], status, code == EXIT_OK, code, detail)
    passed = _norm(status) == _norm(expect)
    detail["expect"] = expect
    if passed:
        return CheckResult(name, chk["type"], status, True, EXIT_OK, detail)
    code = EXIT_UNVERIFIED if status == engine.UNVERIFIED else EXIT_FAIL
    return CheckResult(name, chk["type"], status, False, code, detail)


class Runner:
    def __init__(self, scenario: Scenario, out_dir=None):
        self.sc = scenario
        self.out = Path(out_dir) if out_dir is not None else None
        self.files: list[str] = []

    def _win(self, chk, key="window") -> Window:
        if key in chk:
            W = self.sets_group(chk)
            return _window_of(chk[key], W)
        return self.sc.window

    def sets_group(self, chk):
        if "W" in chk:
            return self.sc.sets[chk["W"]].group
        return self.sc.group

    def _write(self, name: str, text: str):
        if self.out is None:
            return
        p = self.out / name
        p.write_text(text)
        self.files.append(name)

    def run(self) -> ScenarioReport:
        if self.out is not None:
            self.out.mkdir(parents=True, exist_ok=True)
        results = []
        for i, chk in enumerate(self.sc.data["checks"]):
            name = chk.get("name", f"{i}-{chk['type']}")
            fn = getattr(self, f"_run_{chk['type']}")
            results.append(fn(chk, name))
        report = ScenarioReport(self.sc.name, results)
        for r in self.sc.data.get("renders", []):
            report.renders[r["name"]] = self._render(r)
        report.files = sorted(self.files)
        if self.out is not None:
            (self.out / "report.json").write_text(dumps(report.to_json()))
        return report

    # -- checks -------------------------------------------------------------

    def _run_complement(self, chk, name):
        W, C = self.sc.sets[chk["W"]], self.sc.sets[chk["C"]]
        win = self._win(chk)
        cert = engine.is_complement_on_window(W, C, win, _radius_of(chk.get("radius", self.sc.radius)))
        detail = cert.to_json()
        if self.out is not None:
            from .plotting import write_csv

            write_csv(self.out / f"{name}.csv", ("point", "c"),
                      ((" ".join(map(str, p)), " ".join(map(str, c))) for p, c in sorted(cert.witnesses.items())))
            self.files.append(f"{name}.csv")
        return _finish(chk, name, cert.status, detail)

    def _run_minimality(self, chk, name):
        W, C = self.sc.sets[chk["W"]], self.sc.sets[chk["C"]]
        env = self.sc.sets[chk["envelope"]] if "envelope" in chk else None
        bw = None
        if "base_window" in chk:
            bw = Window.parse(chk["base_window"])
        cert = engine.minimality_witnesses(W, C, base_window=bw, envelope=env,
                                           radius=_radius_of(chk.get("radius", self.sc.radius)),
                                           witness_bound=chk.get("witness_bound"))
        detail = cert.to_json()
        found = cert.witnesses
        missing_expected = []
        for c, x0 in chk.get("expect_witnesses", []):
            if found.get(tuple(c)) != tuple(x0):
                missing_expected.append([c, x0])
        status = cert.status
        if missing_expected:
            detail["expected_witnesses_missing"] = missing_expected
            status = "witness-mismatch"
        if self.out is not None:
            from .plotting import write_csv

            write_csv(self.out / f"{name}.csv", ("c", "x0", "min_height"),
                      ((" ".join(map(str, e.c)), " ".join(map(str, e.x0)) if e.x0 else "",
                        "" if e.radius is None or e.radius.min_height is None else e.radius.min_height)
                       for e in cert.entries))
            self.files.append(f"{name}.csv")
        return _finish(chk, name, status, detail)

    def _run_moderation(self, chk, name):
        u = function_from_json(chk["u"])
        method = chk.get("method", "given" if "v" in chk else "poly")
        bound = None
        if method == "given":
            if "v" not in chk:
                raise ScenarioError(f"check {name}: method 'given' needs v")
            v = function_from_json(chk["v"])
        elif method == "ball":
            v, bound = ball_moderation(u)
        else:
            v, bound = poly_moderation(u)
        mode = chk.get("bound", "pair" if method == "given" else "method")
        if mode == "pair":
            try:
                bound = pair_bound(u, v)
            except (TypeError, ValueError):
                bound = None
        elif mode == "none":
            bound = None
        x0w, pw = Window.parse(chk["x0_window"]), Window.parse(chk["probe_window"])
        rep = check_moderation(u, v, x0w, pw, bound)
        if rep.unbounded:
            status = "unbounded"
        elif rep.violations:
            status = "violated"
        else:
            status = "ok"
        detail = rep.to_json()
        detail.pop("rows")
        detail["rows"] = len(rep.rows)
        detail["bound"] = None if bound is None else bound.description
        if self.out is not None:
            from .plotting import moderation_csv, plot_moderation

            moderation_csv(self.out / f"{name}.csv", rep)
            plot_moderation(self.out / f"{name}.png", rep, title=name)
            self.files += [f"{name}.csv", f"{name}.png"]
        return _finish(chk, name, status, detail)

    def _run_shrink(self, chk, name):
        W, C = self.sc.sets[chk["W"]], self.sc.sets[chk["C"]]
        win = self._win(chk)
        rep = engine.shrink_complement_demo(W, C, win, rounds=chk.get("rounds"),
                                            removal_order=chk.get("removal_order"),
                                            cumulative=chk.get("cumulative", True),
                                            radius=_radius_of(chk.get("radius", self.sc.radius)))
        status = "persists" if rep.coverage_persists else "broken"
        if self.out is not None:
            from .plotting import write_csv

            write_csv(self.out / f"{name}.csv", ("removed", "status", "n_w", "w", "c_w"),
                      ((" ".join(map(str, s.removed)), s.status, "" if s.n_w is None else s.n_w,
                        " ".join(map(str, s.w)) if s.w else "", " ".join(map(str, s.c_w)) if s.c_w else "")
                       for s in rep.steps))
            self.files.append(f"{name}.csv")
        return _finish(chk, name, status, rep.to_json())

    # -- renders ------------------------------------------------------------

    def _render(self, r) -> dict:
        layers = [Layer(s, self.sc.sets[s]) for s in r["sets"]]
        group = layers[0].set.group if layers else self.sc.group
        win = _window_of(r["window"], group) if "window" in r else self.sc.window
        sl = Slice.parse(r["slice"]) if "slice" in r else None
        title = r.get("title", r["name"])
        formats = r.get("formats", ["ascii", "svg"])
        problems = audit(layers, win, sl)
        out = {"window": str(win), "audit_problems": problems, "formats": formats}
        name = r["name"]
        if "ascii" in formats:
            self._write(f"{name}.txt", render_ascii(layers, win, sl, title))
        if "svg" in formats:
            self._write(f"{name}.svg", render_svg(layers, win, sl, title))
        if self.out is not None and ("png" in formats or "csv" in formats):
            from .plotting import layers_csv, plot_layers

            if "png" in formats:
                plot_layers(self.out / f"{name}.png", layers, win, sl, title)
                self.files.append(f"{name}.png")
            if "csv" in formats:
                layers_csv(self.out / f"{name}.csv", layers, win, sl)
                self.files.append(f"{name}.csv")
        return out


def run_scenario(path, out_dir=None) -> tuple[ScenarioReport | None, int, str]:
    """``(report, exit_code, message)``; schema problems give ``(None, 64, message)``."""
    try:
        sc = Scenario.load(path)
        report = Runner(sc, out_dir).run()
    except ScenarioError as exc:
        return None, EXIT_SCHEMA, str(exc)
    return report, report.exit_code, ""
