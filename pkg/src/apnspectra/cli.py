"""Command line interface: ``apnspectra <command> [options]``.

Exit codes: 0 success, 2 invalid input, 3 computed spectrum differs from the
theorem's predicted set.
"""

from __future__ import annotations

import argparse
import json
from importlib import resources
import random
import sys
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from . import boolfn, codes, linearized, walsh
from .boolfn import Family, FamilyParams, InvalidParameters, TruthTable
from .gf2n import FieldError, FieldSpec, factorize, make_field, parse_poly

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_MISMATCH = 3

WORK_LIMIT = 10**10

COMMANDS = ("field", "build", "spectrum", "apn", "kernels", "weights", "compare")

# families whose spectrum is stated as a theorem
THEOREM_FAMILIES = {Family.FAMILY1, Family.FAMILY2, Family.FAMILY3, Family.FAMILY4, Family.GOLD}


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    params: dict = field(default_factory=dict)
    poly: str | None = None
    primitive: str | None = None
    gammas: str | None = None
    source: str = "spectrum"
    table: str | None = None
    format: str = "json"
    out: str | None = None
    threads: int = 1
    long: bool = False

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        return cls(**data)

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        params = {}
        for name in ("n", "k", "s", "d", "alpha", "beta", "u", "v"):
            val = getattr(ns, name, None)
            if val is not None:
                params[name] = val
        for name in ("terms", "trace_terms"):
            val = getattr(ns, name, None)
            if val:
                params[name] = val
        if getattr(ns, "relaxed", False):
            params["strict"] = False
        return cls(
            command=ns.command,
            family=getattr(ns, "family", None),
            params=params,
            poly=ns.poly,
            primitive=ns.primitive,
            gammas=getattr(ns, "gammas", None),
            source=getattr(ns, "source", "spectrum"),
            table=getattr(ns, "table", None),
            format=ns.format,
            out=ns.out,
            threads=ns.threads,
            long=ns.long,
        )


# ---------------------------------------------------------------------------
# config -> objects


def _int(text: str) -> int:
    return int(text, 0)


def _pairs(text: str) -> list[tuple[int, int]]:
    """'c:e,c:e' with c and e in any int literal form."""
    out = []
    for item in text.split(","):
        c, e = item.split(":")
        out.append((_int(c), _int(e)))
    return out


def family_params(cfg: RunConfig) -> FamilyParams:
    if cfg.family is None:
        raise UsageError("--family is required")
    try:
        fam = Family(cfg.family)
    except ValueError:
        raise UsageError(f"unknown family {cfg.family!r}") from None
    kw = dict(cfg.params)
    for name in ("alpha", "beta", "u", "v"):
        if isinstance(kw.get(name), str):
            kw[name] = _int(kw[name])
    for name in ("terms", "trace_terms"):
        if isinstance(kw.get(name), str):
            kw[name] = tuple(_pairs(kw[name]))
    return FamilyParams(fam, **kw)


def parse_gammas(text: str, spec: FieldSpec, k: int) -> list[int]:
    """'zero', 'random:SEED', or a comma list of hex values."""
    if text == "zero":
        return [0] * (k - 1)
    if text.startswith("random"):
        seed = int(text.split(":", 1)[1]) if ":" in text else 0
        return random_gammas(spec, k, seed)
    return [int(tok, 16) for tok in text.split(",")]


def random_gammas(spec: FieldSpec, k: int, seed: int) -> list[int]:
    """k - 1 seeded uniform draws from the subfield GF(2^k)."""
    rng = random.Random(seed)
    pool = [int(x) for x in spec.subfield_elements(k)]
    return [rng.choice(pool) for _ in range(k - 1)]


def field_for(cfg: RunConfig, n: int) -> FieldSpec:
    primitive = parse_poly(cfg.primitive) if cfg.primitive else None
    return make_field(n, cfg.poly, primitive)


def instance(cfg: RunConfig) -> TruthTable:
    """The truth table named by the config: a saved file or a family build."""
    if cfg.table:
        return TruthTable.load(cfg.table)
    p = boolfn.validate_params(family_params(cfg))
    spec = field_for(cfg, p.n)
    if cfg.gammas and p.family is Family.FAMILY3:
        p = replace(p, gammas=tuple(parse_gammas(cfg.gammas, spec, p.k)))
    return boolfn.build(spec, p)


def _gate(cfg: RunConfig, work: float, what: str) -> None:
    if work > WORK_LIMIT and not cfg.long:
        raise UsageError(f"{what} needs about {work:.2e} basic operations (> {WORK_LIMIT:.0e}); pass --long")


def spectrum_work(n: int) -> float:
    return float(n) * 4**n


def predicted_values(p: FamilyParams | None) -> list[int] | None:
    if p is None or p.family not in THEOREM_FAMILIES:
        return None
    return walsh.gold_like_values(p.n)


# ---------------------------------------------------------------------------
# commands; each returns (payload, exit code)


def cmd_field(cfg: RunConfig) -> tuple[dict, int]:
    n = cfg.params.get("n")
    if n is None:
        raise UsageError("--n is required")
    spec = field_for(cfg, n)
    return {
        "n": n,
        "reduction_poly": hex(spec.reduction_poly),
        "primitive": hex(spec.primitive),
        "order": spec.order,
        "order_factorization": {str(p): e for p, e in factorize(spec.order).items()},
    }, EXIT_OK


def cmd_build(cfg: RunConfig) -> tuple[dict, int]:
    t = instance(cfg)
    payload = t.header()
    if cfg.out:
        bin_path, json_path = t.save(cfg.out)
        payload["files"] = [str(bin_path), str(json_path)]
    else:
        payload["values"] = [hex(int(v)) for v in t.values]
    return payload, EXIT_OK


def cmd_spectrum(cfg: RunConfig) -> tuple[dict, int]:
    t = instance(cfg)
    _gate(cfg, spectrum_work(t.n), f"full spectrum at n={t.n}")
    h = walsh.full_spectrum(t, threads=cfg.threads)
    payload = h.to_json()
    payload["spectrum"] = walsh.spectrum_values(h)
    payload["params"] = t.params.to_dict() if t.params else None
    predicted = predicted_values(t.params)
    code = EXIT_OK
    if predicted is not None:
        payload["predicted"] = predicted
        payload["matches_theorem"] = payload["spectrum"] == predicted
        if not payload["matches_theorem"]:
            code = EXIT_MISMATCH
    return payload, code


def cmd_apn(cfg: RunConfig) -> tuple[dict, int]:
    t = instance(cfg)
    _gate(cfg, float(4**t.n), f"differential uniformity at n={t.n}")
    du = boolfn.differential_uniformity(t)
    return {"n": t.n, "uniformity": du, "is_apn": du <= 2}, EXIT_OK


def cmd_kernels(cfg: RunConfig) -> tuple[dict, int]:
    t = instance(cfg)
    _gate(cfg, float(t.n**3) * 2**t.n, f"kernels at n={t.n}")
    nul = linearized.nullities(t)
    return linearized.nullity_histogram(nul[1:]), EXIT_OK


def cmd_weights(cfg: RunConfig) -> tuple[dict, int]:
    source = cfg.source
    if source == "pless":
        t = instance(cfg)
        _gate(cfg, spectrum_work(t.n), f"spectrum at n={t.n}")
        values = walsh.spectrum_values(walsh.full_spectrum(t, threads=cfg.threads))
        dist = codes.pless_solve(t.n, values)
    elif source == "direct":
        t = instance(cfg)
        dist = codes.distribution_direct(t)
    elif source == "spectrum":
        t = instance(cfg)
        _gate(cfg, spectrum_work(t.n), f"spectrum at n={t.n}")
        dist = codes.distribution_from_spectrum(t, threads=cfg.threads)
    else:
        raise UsageError(f"unknown source {source!r}")
    return dist.to_json(source), EXIT_OK


def cmd_compare(cfg: RunConfig) -> tuple[dict, int]:
    t = instance(cfg)
    _gate(cfg, 2 * spectrum_work(t.n), f"two spectra at n={t.n}")
    gold = boolfn.build(t.spec, FamilyParams(Family.GOLD, n=t.n, d=1))
    mine = codes.distribution_from_spectrum(t, threads=cfg.threads)
    ref = codes.distribution_from_spectrum(gold, threads=cfg.threads)
    return {"n": t.n, "same_as_gold": codes.same_distribution(mine, ref)}, EXIT_OK


HANDLERS = {
    "field": cmd_field,
    "build": cmd_build,
    "spectrum": cmd_spectrum,
    "apn": cmd_apn,
    "kernels": cmd_kernels,
    "weights": cmd_weights,
    "compare": cmd_compare,
}


def run(cfg: RunConfig) -> tuple[dict, int]:
    try:
        return HANDLERS[cfg.command](cfg)
    except (UsageError, InvalidParameters, FieldError, codes.CodeError, linearized.NotQuadratic) as exc:
        payload = {"error": str(exc)}
        if isinstance(exc, InvalidParameters):
            payload["constraint"] = exc.constraint
        return payload, EXIT_INVALID


# ---------------------------------------------------------------------------
# output


def schema(name: str) -> dict:
    """JSON Schema shipped for a command's payload ('error' for failures)."""
    return json.loads(resources.files(__package__).joinpath("schemas", f"{name}.json").read_text())


def render(payload: dict, fmt: str, command: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        if command == "spectrum" and "values" in payload:
            lines = ["v,count"] + [f"{e['v']},{e['count']}" for e in payload["values"]]
        elif command == "weights" and "weights" in payload:
            lines = ["w,count"] + [f"{e['w']},{e['count']}" for e in payload["weights"]]
        else:
            lines = ["key,value"] + [f"{k},{json.dumps(v)}" for k, v in payload.items()]
        return "\n".join(lines) + "\n"
    if command == "build" and "values" in payload:
        return "\n".join(v[2:] for v in payload["values"]) + "\n"
    return "".join(f"{k}: {v}\n" for k, v in payload.items())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--poly", help="reduction polynomial as hex, bit i = coefficient of x^i")
    common.add_argument("--primitive", help="primitive element override as hex")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="output path (build: basename of .bin/.json pair)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--long", action="store_true", help="allow runs above 1e10 basic operations")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", choices=[f.value for f in Family])
    fam.add_argument("--table", help="load a saved truth table instead of building a family")
    fam.add_argument("--k", type=int)
    fam.add_argument("--s", type=int)
    fam.add_argument("--d", type=int, help="Gold exponent x^(2^d+1)")
    for name in ("alpha", "beta", "u", "v"):
        fam.add_argument(f"--{name}", help=f"{name} as an int literal (e.g. 0x1f)")
    fam.add_argument("--gammas", help="family3: 'zero', 'random:SEED' or hex list")
    fam.add_argument("--terms", help="custom: monomials 'coeff:exp,...'")
    fam.add_argument("--trace-terms", dest="trace_terms", help="custom: trace terms 'coeff:exp,...'")
    fam.add_argument("--relaxed", action="store_true", help="family3: drop the k odd / s odd checks")

    parser = argparse.ArgumentParser(prog="apnspectra", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("field", parents=[common], help="report GF(2^n) parameters")
    sub.add_parser("build", parents=[common, fam], help="build and export a truth table")
    sub.add_parser("spectrum", parents=[common, fam], help="full Walsh spectrum")
    sub.add_parser("apn", parents=[common, fam], help="differential uniformity")
    sub.add_parser("kernels", parents=[common, fam], help="nullity histogram of L_b")
    w = sub.add_parser("weights", parents=[common, fam], help="weight distribution of C_f")
    w.add_argument("--source", choices=("spectrum", "direct", "pless"), default="spectrum")
    sub.add_parser("compare", parents=[common, fam], help="compare C_f with the Gold x^3 code")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig.from_args(ns)
    payload, code = run(cfg)
    text = render(payload, cfg.format, cfg.command)
    if cfg.out and cfg.command != "build":
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
