"""Command-line front end: scenario loading, evaluation, report formatting.

Scenario files describe a curve with a group action, a list of evaluation
runs (sheaf + requested outputs, optionally with frozen expected values),
and an optional independent-oracle declaration.  Reports are deterministic
JSON (sorted keys, exact rationals as strings) or a human-readable table.
"""
from __future__ import annotations

import concurrent.futures
import json
import os
import sys
from importlib import resources

import click
import jsonschema

from . import engine, oracle
from .gcurve import SchemaError, SheafSpec, gcurve_build, parse_sheaf
from .repring import character_table


class CheckFailure(ValueError):
    pass


# ---------------------------------------------------------------------------
# schema and bundled scenarios


def schema_text():
    return resources.files("equichi").joinpath("schema.json").read_text()


def load_schema():
    return json.loads(schema_text())


def validate_scenario(obj):
    validator = jsonschema.Draft202012Validator(load_schema())
    error = jsonschema.exceptions.best_match(validator.iter_errors(obj))
    if error is not None:
        path = "/".join(str(p) for p in error.absolute_path) or "(top level)"
        raise SchemaError(f"scenario does not match the schema at {path}: "
                          f"{error.message}")


def list_bundled():
    root = resources.files("equichi").joinpath("scenarios")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def bundled_text(name):
    root = resources.files("equichi").joinpath("scenarios")
    path = root.joinpath(f"{name}.json")
    if not path.is_file():
        raise FileNotFoundError(f"no bundled scenario named {name!r}")
    return path.read_text()


# ---------------------------------------------------------------------------
# serialization helpers (exact rationals as strings throughout)


def _rep(cls):
    return cls.mult_strings()


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    return str(x)


# ---------------------------------------------------------------------------
# evaluation


def _eval_output(name, curve, spec, run):
    if name == "chi_g":
        rep = engine.chi_g(curve, spec)
        return {
            "value": _rep(rep.value),
            "regular_mult": str(rep.regular_mult),
            "gammas": {k: _rep(v) for k, v in sorted(rep.gammas().items())},
        }
    if name == "deg_g":
        return _rep(engine.deg_g(curve, spec))
    if name == "h0":
        return _rep(engine.h0_class(curve, spec))
    if name == "invariant_dim":
        out = {}
        for m in run.get("invariant_m", [1]):
            r = engine.invariant_dim(curve, m)
            out[str(m)] = {
                "euler_inner": str(r["euler_inner"]),
                "closed_form": None if r["closed_form"] is None
                else str(r["closed_form"]),
                "dimension": r["dimension"],
            }
        return out
    if name == "def_dim":
        return engine.def_dim(curve)
    if name == "dual_graph":
        return {k: _rep(v) for k, v in sorted(engine.dual_graph_chi(curve).items())}
    if name == "topo":
        return _rep(engine.topo_chi(curve))
    if name == "bounds":
        return [{k: _jsonable(v) for k, v in c.items()}
                for c in engine.bound_certificates(curve)]
    raise ValueError(f"unknown output {name!r}")


def _oracle_block(scenario, curve):
    spec = scenario.get("oracle")
    if spec is None:
        raise CheckFailure("a run requests oracle_check but the scenario "
                           "declares no oracle")
    out = []
    if spec["kind"] == "superelliptic":
        n, exps = spec["n"], spec["exponents"]
        gen = tuple((i + 1) % n for i in range(n))
        if gen not in curve.group:
            raise CheckFailure("superelliptic oracle needs the standard "
                               "cyclic group of the cover")
        for m in spec.get("powers", [1, 2, 3]):
            dims = oracle.superelliptic_h0(n, exps, m)
            want = oracle.superelliptic_mults(n, dims)
            h0 = engine.h0_class(curve, SheafSpec.omega(m))
            got = oracle.character_exponent_mults(curve, h0, gen, n)
            out.append({"name": f"superelliptic_h0_multiplicities:m={m}",
                        "pass": got == want})
            iv = engine.invariant_dim(curve, m)
            if iv["dimension"] is not None:
                out.append({"name": f"superelliptic_invariant_dim:m={m}",
                            "pass": iv["dimension"] == dims[0]})
    elif spec["kind"] == "rational_nodal":
        want = oracle.rational_nodal_h0(curve)
        h0 = engine.h0_class(curve, SheafSpec.omega(1))
        out.append({"name": "rational_nodal_h0", "pass": h0 == want})
        h0g, h1g = oracle.graph_homology_rep(curve)
        graph = engine.dual_graph_chi(curve)["graph_class"]
        out.append({"name": "graph_euler_class", "pass": h0g - h1g == graph})
        out.append({"name": "hodge_h1_equals_h0_omega",
                    "pass": engine.hodge_h1_class(curve) == want})
    else:
        raise CheckFailure(f"unknown oracle kind {spec['kind']!r}")
    return out


def evaluate_scenario(scenario, check=False):
    validate_scenario(scenario)
    curve = gcurve_build(scenario["curve"])
    tab = character_table(curve.group)
    qs = curve.quotient_summary()
    report = {
        "name": scenario["name"],
        "scenario": scenario,
        "group": {
            "order": curve.group.order,
            "num_classes": len(tab),
            "irreducible_dims": [int(d) for d in tab.dims],
        },
        "curve": {
            "p_a": curve.p_a(),
            "p_a_D": qs["p_a_D"],
            "pi0": curve.pi0(),
            "connected": curve.connected,
            "stable": curve.stable,
            "faithful": curve.faithful,
        },
        "runs": [],
        "ok": True,
    }
    verified = None
    for run in scenario["runs"]:
        spec = parse_sheaf(run.get("sheaf", {"mode": "omega", "m": 1}))
        outputs = {}
        for name in run["outputs"]:
            if name == "oracle_check":
                if verified is None:
                    verified = _oracle_block(scenario, curve)
                continue
            outputs[name] = _eval_output(name, curve, spec, run)
        entry = {"label": run["label"], "outputs": outputs}
        if check and "expect" in run:
            checks = []
            for key, want in sorted(run["expect"].items()):
                got = outputs.get(key)
                ok = got == want
                checks.append({"output": key, "pass": ok})
                if not ok:
                    report["ok"] = False
            entry["checks"] = checks
        report["runs"].append(entry)
    if verified is not None:
        report["verified"] = verified
        if not all(v["pass"] for v in verified):
            report["ok"] = False
    return report


def _resolve_path(token):
    if os.path.isfile(token):
        with open(token) as fh:
            return token, json.load(fh)
    try:
        return f"bundled:{token}", json.loads(bundled_text(token))
    except FileNotFoundError:
        raise FileNotFoundError(f"{token!r} is neither a file nor a bundled "
                                "scenario name") from None


def _run_one(args):
    token, check = args
    source, scenario = _resolve_path(token)
    rep = evaluate_scenario(scenario, check=check)
    rep["source"] = source
    return rep


# ---------------------------------------------------------------------------
# rendering


def _dump(report):
    return json.dumps(report, sort_keys=True, indent=2, separators=(",", ": "))


def _render_text(report, out):
    for sc in report["scenarios"]:
        out(f"scenario {sc['name']}  ({sc['source']})")
        cv = sc["curve"]
        out(f"  |G| = {sc['group']['order']}, p_a = {cv['p_a']}, "
            f"p_a(D) = {cv['p_a_D']}, stable = {cv['stable']}, "
            f"faithful = {cv['faithful']}")
        for run in sc["runs"]:
            out(f"  run {run['label']}")
            for key, val in sorted(run["outputs"].items()):
                out(f"    {key}: {json.dumps(val, sort_keys=True)}")
            for chk in run.get("checks", []):
                out(f"    check {chk['output']}: "
                    f"{'pass' if chk['pass'] else 'FAIL'}")
        for v in sc.get("verified", []):
            out(f"  verified {v['name']}: {'pass' if v['pass'] else 'FAIL'}")
    out(f"seed: {report['seed']}")
    out("ok" if report["ok"] else "FAILED")


# ---------------------------------------------------------------------------
# commands


@click.group()
def main():
    """Exact equivariant Euler characteristics on nodal curves."""


@main.command()
@click.argument("paths", nargs=-1, required=True)
@click.option("--check", is_flag=True,
              help="Compare outputs against frozen expectations and oracles.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="json", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Evaluate scenario files in parallel.")
def run(paths, check, fmt, jobs):
    """Evaluate scenario files (or bundled scenario names)."""
    tasks = [(p, check) for p in paths]
    try:
        if jobs > 1 and len(tasks) > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as ex:
                scenarios = list(ex.map(_run_one, tasks))
        else:
            scenarios = [_run_one(t) for t in tasks]
    except Exception as exc:  # noqa: BLE001 - uniform machine-readable errors
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        click.echo(_dump(err))
        sys.exit(1)
    report = {
        "seed": os.environ.get("EQUICHI_SEED"),
        "scenarios": scenarios,
        "ok": all(sc["ok"] for sc in scenarios),
    }
    if fmt == "json":
        click.echo(_dump(report))
    else:
        _render_text(report, click.echo)
    sys.exit(0 if report["ok"] else 1)


@main.command()
def schema():
    """Print the scenario JSON schema."""
    click.echo(schema_text(), nl=False)


@main.command()
@click.argument("name", required=False)
def bundled(name):
    """List bundled scenarios, or print one by name."""
    if name is None:
        for n in list_bundled():
            click.echo(n)
        return
    try:
        click.echo(bundled_text(name), nl=False)
    except FileNotFoundError as exc:
        err = {"error": {"type": "FileNotFoundError", "message": str(exc)}}
        click.echo(_dump(err))
        sys.exit(1)


if __name__ == "__main__":
    main()
