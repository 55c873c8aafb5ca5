"""Command-line front end: tables, identity checks, enumeration dumps, Monte Carlo.

Subcommands
-----------
moments    exact semicircle and correction moments, plus the two-term
           expansion at the requested sizes
check      exact identity suite (series identities, coefficient agreement,
           walk-class counts); exit code 0 iff everything passes
enumerate  classified canonical closed-walk words as CSV, with count totals
mc         Monte Carlo correction estimates and Richardson combinations
density    tabulated semicircle and correction densities on (-2, 2)
stieltjes  both Stieltjes transforms on a circle |z| = radius > 2

Output is CSV (comma delimiter, header row, LF endings) or JSON (one object
with a ``config`` echo and a ``rows`` array).  Every output embeds the
effective configuration, and config-file keys (--config, JSON) are overridden
by command-line flags.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import combinatorics as comb
from . import measure, montecarlo, series, walks

_DEFAULTS = {
    "ensemble": "goe",
    "kmax": 8,
    "n": [100],
    "samples": 1000,
    "seed": 1,
    "format": "csv",
    "out": None,
    "order": 40,
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    ensemble: str
    params: comb.EnsembleParams
    kmax: int
    n_list: tuple[int, ...]
    samples: int
    seed: int
    fmt: str
    out: str | None
    order: int

    def echo(self) -> dict:
        return {
            "command": self.command,
            "ensemble": self.ensemble,
            "r": self.params.r,
            "sigma2": str(self.params.sigma2),
            "s2": str(self.params.s2),
            "alpha": str(self.params.alpha),
            "kmax": self.kmax,
            "n": list(self.n_list),
            "samples": self.samples,
            "seed": self.seed,
            "format": self.fmt,
            "order": self.order,
        }


class ConfigError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with defaults for any flag")
    common.add_argument("--ensemble", choices=["goe", "gue", "rademacher", "custom"])
    common.add_argument("--r", type=int, help="1 = real entries, 0 = complex (custom ensemble)")
    common.add_argument("--sigma2", help="off-diagonal variance, exact rational like 1 or 5/4")
    common.add_argument("--s2", help="diagonal variance, exact rational")
    common.add_argument("--alpha", help="off-diagonal fourth moment, exact rational")
    common.add_argument("--kmax", type=int, help="largest moment index")
    common.add_argument("--n", type=int, action="append", help="matrix size (repeatable)")
    common.add_argument("--samples", type=int, help="Monte Carlo sample count")
    common.add_argument("--seed", type=int, help="base RNG seed")
    common.add_argument("--format", choices=["csv", "json"], dest="fmt")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--order", type=int, help="series truncation order")

    parser = argparse.ArgumentParser(
        prog="wignerexp",
        description="Spectral moments of Wigner matrices: semicircle plus exact 1/n correction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("moments", parents=[common], help="exact moment tables")

    p_check = sub.add_parser("check", parents=[common], help="exact identity suite")
    p_check.add_argument("--walks-kmax", type=int, default=10, help="walk-count checks up to this word length")
    p_check.add_argument(
        "--inject-fault",
        action="store_true",
        help="test hook: perturb one Catalan coefficient so the suite must fail",
    )

    p_enum = sub.add_parser("enumerate", parents=[common], help="dump classified walk classes")
    p_enum.add_argument("--k", type=int, required=True, help="word length (at most 12)")
    p_enum.add_argument("--v", type=int, help="filter on vertex count")
    p_enum.add_argument("--e", type=int, help="filter on edge count")
    p_enum.add_argument("--cycle-type", choices=list(walks.CYCLE_TYPES), help="filter on walk structure")

    sub.add_parser("mc", parents=[common], help="Monte Carlo correction estimates")

    p_dens = sub.add_parser("density", parents=[common], help="tabulate densities on (-2, 2)")
    p_dens.add_argument("--grid", type=int, default=201, help="number of interior sample points")

    p_st = sub.add_parser("stieltjes", parents=[common], help="tabulate Stieltjes transforms")
    p_st.add_argument("--radius", type=float, default=4.0, help="circle radius, must exceed 2")
    p_st.add_argument("--points", type=int, default=16, help="points on the circle")

    return parser


def _merged(args: argparse.Namespace) -> dict:
    merged = dict(_DEFAULTS)
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            file_cfg = json.load(fh)
        unknown = set(file_cfg) - {"ensemble", "r", "sigma2", "s2", "alpha", "kmax", "n",
                                   "samples", "seed", "format", "out", "order"}
        if unknown:
            raise ConfigError(f"unknown config-file keys: {sorted(unknown)}")
        if "format" in file_cfg:
            file_cfg["fmt"] = file_cfg.pop("format")
        merged.update(file_cfg)
    if "fmt" not in merged:
        merged["fmt"] = merged.pop("format")
    for key in ("ensemble", "r", "sigma2", "s2", "alpha", "kmax", "n", "samples",
                "seed", "fmt", "out", "order"):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    merged.pop("format", None)
    return merged


def _resolve_params(merged: dict) -> comb.EnsembleParams:
    name = merged["ensemble"]
    explicit = {key: merged.get(key) for key in ("r", "sigma2", "s2", "alpha")}
    if name != "custom":
        given = [key for key, val in explicit.items() if val is not None]
        if given:
            raise ConfigError(
                f"flags {given} only apply with --ensemble custom; "
                f"preset '{name}' fixes all four parameters"
            )
        return comb.PRESETS[name]
    missing = [key for key, val in explicit.items() if val is None]
    if missing:
        raise ConfigError(f"--ensemble custom requires --r --sigma2 --s2 --alpha (missing {missing})")
    return comb.EnsembleParams(
        r=int(explicit["r"]),
        sigma2=Fraction(str(explicit["sigma2"])),
        s2=Fraction(str(explicit["s2"])),
        alpha=Fraction(str(explicit["alpha"])),
    )


def resolve_config(args: argparse.Namespace) -> RunConfig:
    merged = _merged(args)
    params = _resolve_params(merged)
    n_list = tuple(int(n) for n in merged["n"])
    if any(n < 1 for n in n_list):
        raise ConfigError(f"matrix sizes must be positive, got {list(n_list)}")
    if merged["kmax"] < 0:
        raise ConfigError(f"kmax must be nonnegative, got {merged['kmax']}")
    if merged["order"] < 2:
        raise ConfigError(f"series order must be at least 2, got {merged['order']}")
    return RunConfig(
        command=args.command,
        ensemble=merged["ensemble"],
        params=params,
        kmax=int(merged["kmax"]),
        n_list=n_list,
        samples=int(merged["samples"]),
        seed=int(merged["seed"]),
        fmt=merged["fmt"],
        out=merged["out"],
        order=int(merged["order"]),
    )


# -- output plumbing ---------------------------------------------------------


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _render(
    config: RunConfig,
    columns: Sequence[str],
    rows: Iterable[dict],
    head_comments: Sequence[str] = (),
    tail_comments: Sequence[str] = (),
    extra_json: dict | None = None,
) -> str:
    rows = list(rows)
    if config.fmt == "json":
        payload = {"config": config.echo()}
        if extra_json:
            payload.update(extra_json)
        payload["rows"] = rows
        return json.dumps(payload, indent=2) + "\n"
    lines = ["# config: " + json.dumps(config.echo(), sort_keys=True)]
    lines.extend(f"# {comment}" for comment in head_comments)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_cell(row[col]) for col in columns))
    lines.extend(f"# {comment}" for comment in tail_comments)
    return "\n".join(lines) + "\n"


def _fmt15(value: Fraction | float) -> str:
    return format(float(value), ".15g")


# -- subcommands -------------------------------------------------------------


def cmd_moments(config: RunConfig) -> int:
    columns = ["k", "sc", "nu", "nu_dec"]
    for n in config.n_list:
        columns += [f"m_n{n}", f"m_n{n}_dec"]
    rows = []
    for k in range(config.kmax + 1):
        sc = comb.semicircle_moment(k)
        nu = comb.nu_moment(k, config.params)
        row = {"k": k, "sc": str(sc), "nu": str(nu), "nu_dec": _fmt15(nu)}
        for n in config.n_list:
            m = comb.expected_moment_expansion(k, n, config.params)
            row[f"m_n{n}"] = str(m)
            row[f"m_n{n}_dec"] = _fmt15(m)
        rows.append(row)
    _emit(_render(config, columns, rows), config.out)
    return 0


def _series_identity_checks(order: int, fault_index: int | None):
    one = series.TruncatedRationalSeries.one(order)
    x = series.TruncatedRationalSeries.monomial(1, order)
    t = series.catalan_series(order)
    if fault_index is not None:
        t = t + series.TruncatedRationalSeries.monomial(fault_index, order)
    d = one - x * t * t
    t3 = t**3
    t5 = t3 * t * t

    def mismatch(lhs, rhs):
        idx = lhs.first_difference(rhs)
        return (idx is None), ("" if idx is None else f"first failing coefficient index {idx}")

    checks = []
    ok, detail = mismatch(t, one + x * t * t)
    checks.append(("series: T equals 1 + x T^2", ok, detail))
    ok, detail = mismatch(t * (one - x * t), one)
    checks.append(("series: T (1 - x T) equals 1", ok, detail))
    ok, detail = mismatch((t.derivative() * d.truncate(order - 1)), t3.truncate(order - 1))
    checks.append(("series: T' (1 - x T^2) equals T^3", ok, detail))
    lhs = t.derivative().derivative()
    rhs = (2 * t5 / (d * d) + 2 * t5 / d**3).truncate(order - 2)
    ok, detail = mismatch(lhs, rhs)
    checks.append(("series: T'' equals 2T^5/(1-xT^2)^2 + 2T^5/(1-xT^2)^3", ok, detail))
    t4, t7 = t3 * t, t5 * t * t
    x2, x3, d2 = x * x, x * x * x, d * d
    combo = -(x * t4) / d2 + 2 * ((x3 * t7) / d2) + 2 * ((x2 * t5) / d) + (x * t3) / d
    ok, detail = mismatch(combo, series.TruncatedRationalSeries.zero(order))
    checks.append(("series: four-term cancellation vanishes", ok, detail))
    return checks


def _coefficient_checks(order: int, params: comb.EnsembleParams):
    checks = []
    total = series.s_total(order, params)
    parts = series.s_components(order, params)
    summed = parts[0] + parts[1] + parts[2] + parts[3]
    idx = summed.first_difference(total)
    checks.append(
        (
            "series: S1+S2+S3+S4 equals the reduced closed form",
            idx is None,
            "" if idx is None else f"first failing coefficient index {idx}",
        )
    )
    bad = ""
    ok = True
    for l in range(min(order, 20) + 1):
        direct = comb.order_one_coeff(l, params).total
        closed = comb.nu_moment(2 * l, params)
        if not (total.coeff(l) == direct == closed):
            ok, bad = False, f"first failing coefficient index {l}"
            break
    checks.append(("coefficients: series = family sum = measure moment", ok, bad))

    gue_total = series.s_total(min(order, 20), comb.GUE)
    ok = gue_total.is_zero and all(
        comb.nu_moment(2 * l, comb.GUE) == 0 for l in range(21)
    )
    checks.append(("gue: correction vanishes identically", ok, ""))

    ok = True
    bad = ""
    for l in range(21):
        want = Fraction(4**l - math.comb(2 * l, l), 2)
        if comb.nu_moment(2 * l, comb.GOE) != want:
            ok, bad = False, f"first failing coefficient index {l}"
            break
    checks.append(("goe: moments match (4^l - C(2l, l)) / 2", ok, bad))
    return checks


def _walk_count_checks(walks_kmax: int):
    ok = True
    bad = ""
    for l in range(1, walks_kmax // 2 + 1):
        k = 2 * l
        expected = {
            (l + 1, l, None): comb.catalan(l),
            (l, l - 1, None): comb.double_edge_class_count(l),
            (l, l, walks.SELF_LOOP): comb.self_loop_class_count(l),
            (l, l, walks.CYCLE_ONE_WAY): comb.cycle_one_way_class_count(l),
            (l, l, walks.CYCLE_BOTH_WAYS): comb.cycle_both_ways_class_count(l),
        }
        for (v, e, kind), want in expected.items():
            got = walks.count_classes(k, v=v, e=e, cycle_type=kind)
            if got != want:
                ok = False
                bad = f"k={k} v={v} e={e} type={kind}: counted {got}, formula {want}"
                break
        if not ok:
            break
    return [("walks: class counts match all four closed-form families", ok, bad)]


def identity_suite(
    order: int,
    params: comb.EnsembleParams,
    walks_kmax: int = 10,
    fault_index: int | None = None,
):
    checks = _series_identity_checks(order, fault_index)
    checks += _coefficient_checks(order, params)
    checks += _walk_count_checks(walks_kmax)
    return checks


def cmd_check(config: RunConfig, walks_kmax: int, inject_fault: bool) -> int:
    fault = 7 if inject_fault else None
    checks = identity_suite(config.order, config.params, walks_kmax, fault)
    failures = 0
    for name, ok, detail in checks:
        status = "PASS" if ok else "FAIL"
        failures += 0 if ok else 1
        line = f"{status}  {name}"
        if detail:
            line += f"  ({detail})"
        print(line)
    print(f"{len(checks) - failures}/{len(checks)} identities hold")
    return 0 if failures == 0 else 1


def _filtered_classes(k: int, v, e, cycle_type):
    for cls in walks.enumerate_canonical_words(k):
        if v is not None and cls.v != v:
            continue
        if e is not None and cls.e != e:
            continue
        if cycle_type is not None and cls.cycle_type != cycle_type:
            continue
        yield cls


def cmd_enumerate(config: RunConfig, k: int, v, e, cycle_type) -> int:
    if k < 1 or k > walks.MAX_WORD_LENGTH:
        raise ConfigError(
            f"word length must be within 1..{walks.MAX_WORD_LENGTH} "
            f"(class counts grow like Bell numbers), got {k}"
        )
    if config.ensemble == "custom":
        raise ConfigError(
            "enumeration expectations need full entry moment tables; "
            "use a preset ensemble or the library MomentModel API"
        )
    model = walks.PRESET_MODELS[config.ensemble]()
    columns = ["word", "v", "e", "cycle_type", "exp_num", "exp_den"]

    def rows():
        for cls in _filtered_classes(k, v, e, cycle_type):
            value = walks.expected_word_product(cls, model)
            yield cls, {
                "word": "-".join(map(str, cls.canonical_word)),
                "v": cls.v,
                "e": cls.e,
                "cycle_type": cls.cycle_type,
                "exp_num": value.numerator,
                "exp_den": value.denominator,
            }

    totals: dict[tuple[int, int], int] = {}
    total = 0
    if config.fmt == "json":
        collected = []
        for cls, row in rows():
            collected.append(row)
            totals[(cls.v, cls.e)] = totals.get((cls.v, cls.e), 0) + 1
            total += 1
        extra = {
            "summary": {f"v={vv},e={ee}": c for (vv, ee), c in sorted(totals.items())},
            "total_classes": total,
        }
        _emit(_render(config, columns, collected, extra_json=extra), config.out)
        return 0

    # CSV streams one line per class: class counts grow like Bell numbers,
    # so the full table must never be materialized
    def lines():
        yield "# config: " + json.dumps(config.echo(), sort_keys=True)
        yield ",".join(columns)
        nonlocal total
        for cls, row in rows():
            totals[(cls.v, cls.e)] = totals.get((cls.v, cls.e), 0) + 1
            total += 1
            yield ",".join(_cell(row[col]) for col in columns)
        for (vv, ee), count in sorted(totals.items()):
            yield f"# count[v={vv},e={ee}]={count}"
        yield f"# total_classes={total}"

    if config.out is None:
        for line in lines():
            sys.stdout.write(line + "\n")
    else:
        with open(config.out, "w", encoding="utf-8", newline="\n") as fh:
            for line in lines():
                fh.write(line + "\n")
    return 0


def cmd_mc(config: RunConfig) -> int:
    if config.ensemble == "custom":
        raise ConfigError(
            "Monte Carlo needs entry generators; use a preset ensemble or the "
            "library custom_sampler API"
        )
    if config.kmax < 2:
        raise ConfigError(f"mc needs kmax >= 2, got {config.kmax}")
    sampler = montecarlo.PRESET_SAMPLERS[config.ensemble]()
    ks = list(range(2, config.kmax + 1, 2))
    columns = ["method", "k", "n", "samples", "point", "stderr", "reference", "z"]
    rows = []
    for n in config.n_list:
        direct = montecarlo.estimate_corrections(ks, n, config.samples, sampler, config.seed)
        combined = montecarlo.richardson_corrections(ks, n, sampler, config.samples, config.seed)
        for method, records in (("estimate", direct), ("richardson", combined)):
            for rec in records:
                rows.append(
                    {
                        "method": method,
                        "k": rec.k,
                        "n": rec.n,
                        "samples": rec.samples,
                        "point": rec.point,
                        "stderr": rec.stderr,
                        "reference": rec.reference,
                        "z": rec.z_score,
                    }
                )
    _emit(_render(config, columns, rows), config.out)
    return 0


def cmd_density(config: RunConfig, grid: int) -> int:
    if grid < 1:
        raise ConfigError(f"grid must be positive, got {grid}")
    step = 4.0 / grid
    columns = ["x", "semicircle", "nu"]
    rows = []
    for j in range(grid):
        x = -2.0 + (j + 0.5) * step
        rows.append(
            {
                "x": x,
                "semicircle": measure.semicircle_density(x),
                "nu": measure.nu_density(x, config.params),
            }
        )
    atoms = measure.nu_atoms(config.params)
    comments = ["atoms: " + " ".join(f"{loc:+g}:{mass}" for loc, mass in atoms)]
    extra = {"atoms": [[loc, str(mass)] for loc, mass in atoms]}
    _emit(
        _render(config, columns, rows, head_comments=comments, extra_json=extra),
        config.out,
    )
    return 0


def cmd_stieltjes(config: RunConfig, radius: float, points: int) -> int:
    if radius <= 2.0:
        raise ConfigError(f"radius must exceed 2 to stay off the branch cut, got {radius}")
    if points < 1:
        raise ConfigError(f"points must be positive, got {points}")
    columns = ["re_z", "im_z", "sc_re", "sc_im", "nu_re", "nu_im"]
    rows = []
    for j in range(points):
        angle = 2.0 * math.pi * j / points
        z = complex(radius * math.cos(angle), radius * math.sin(angle))
        h = measure.semicircle_stieltjes(z)
        hn = measure.nu_stieltjes(z, config.params)
        rows.append(
            {
                "re_z": z.real,
                "im_z": z.imag,
                "sc_re": h.real,
                "sc_im": h.imag,
                "nu_re": hn.real,
                "nu_im": hn.imag,
            }
        )
    _emit(_render(config, columns, rows), config.out)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
        if args.command == "moments":
            return cmd_moments(config)
        if args.command == "check":
            return cmd_check(config, args.walks_kmax, args.inject_fault)
        if args.command == "enumerate":
            return cmd_enumerate(config, args.k, args.v, args.e, args.cycle_type)
        if args.command == "mc":
            return cmd_mc(config)
        if args.command == "density":
            return cmd_density(config, args.grid)
        if args.command == "stieltjes":
            return cmd_stieltjes(config, args.radius, args.points)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
