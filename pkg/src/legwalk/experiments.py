"""Named, file-producing experiments.

Each experiment declares a parameter schema (unknown keys are rejected, and
values arrive as strings from the CLI or as native values from code), pulls
its prime table through a cache-aware provider, and emits deterministic
CSV/JSON/SVG artifacts: identical config plus identical cache digest means
identical bytes.  Volatile data (wall time) lives only on the in-memory
report, never in the serialized one.
"""

import hashlib
import json
import os
import time
from dataclasses import dataclass, field

from . import gaussian, svgplot, walks
from .gaussian import GaussInt, parse_gauss
from .primes import PrimeTable, load_cache, load_or_build, shrink_table, table_digest

REPORT_SCHEMA = 1


class ExperimentError(Exception):
    """Base for configuration and execution failures."""


class UnknownExperimentError(ExperimentError):
    pass


class ParamError(ExperimentError):
    pass


class CacheLimitError(ExperimentError):
    pass


# --- value parsing (shared with the CLI) ---

def parse_int_scalar(value) -> int:
    """Integers in plain, underscore, 1e6, or 10^6 notation."""
    if isinstance(value, bool):
        raise ParamError(f"expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if value != int(value):
            raise ParamError(f"expected an integer, got {value!r}")
        return int(value)
    text = str(value).strip().replace("_", "")
    if "^" in text:
        base, _, exp = text.partition("^")
        return int(base) ** int(exp)
    try:
        return int(text)
    except ValueError:
        pass
    try:
        as_float = float(text)
    except ValueError:
        raise ParamError(f"cannot parse integer from {value!r}") from None
    if as_float != int(as_float):
        raise ParamError(f"{value!r} is not an integer")
    return int(as_float)


def parse_grid(value) -> tuple[int, ...]:
    """A grid of x values: '10^1..10^6' (powers of ten, inclusive) or an
    explicit comma list '10,100,1000'."""
    if isinstance(value, (list, tuple)):
        return tuple(parse_int_scalar(v) for v in value)
    text = str(value).strip()
    if ".." in text:
        lo_text, _, hi_text = text.partition("..")
        lo, hi = parse_int_scalar(lo_text), parse_int_scalar(hi_text)
        points = []
        x = 1
        while x <= hi:
            if x >= lo:
                points.append(x)
            x *= 10
        if not points or points[0] != lo or points[-1] != hi:
            raise ParamError(
                f"range grid endpoints must be powers of ten, got {text!r}"
            )
        return tuple(points)
    return tuple(parse_int_scalar(part) for part in text.split(","))


def parse_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ParamError(f"cannot parse boolean from {value!r}")


def _parse_gauss_param(value) -> GaussInt:
    if isinstance(value, GaussInt):
        return value
    try:
        return parse_gauss(str(value))
    except ValueError as exc:
        raise ParamError(str(exc)) from None


def _parse_choice(options):
    def parse(value):
        text = str(value).strip()
        if text not in options:
            raise ParamError(f"expected one of {options}, got {value!r}")
        return text

    return parse


_REQUIRED = object()


@dataclass(frozen=True)
class Param:
    name: str
    parse: callable
    default: object = _REQUIRED
    help: str = ""


@dataclass(frozen=True)
class Experiment:
    name: str
    description: str
    params: tuple
    run: callable  # (params: dict, ctx: RunContext) -> (summary, artifacts)


@dataclass(frozen=True)
class Artifact:
    filename: str
    kind: str  # "csv" or "svg"
    text: str


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    params: dict = field(default_factory=dict)
    output_dir: str = "out"
    formats: tuple = ("csv", "json")
    cache_dir: str | None = None
    cache_file: str | None = None
    svg_timestamp: bool = True


@dataclass
class ExperimentReport:
    name: str
    params: dict
    summary: dict
    files: list
    cache_digest: str | None
    wall_time_s: float
    output_dir: str

    def to_dict(self) -> dict:
        """The serialized form; excludes wall time so reruns byte-match."""
        return {
            "schema": REPORT_SCHEMA,
            "experiment": self.name,
            "params": _jsonable(self.params),
            "cache_digest": self.cache_digest,
            "summary": _jsonable(self.summary),
            "files": self.files,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, GaussInt):
        return str(value)
    return value


class RunContext:
    """Prime-table provisioning plus output settings for one run."""

    def __init__(self, config: ExperimentConfig, progress=None):
        self.config = config
        self.progress = progress or (lambda message: None)
        self._cached_file_table: PrimeTable | None = None
        self.cache_digest: str | None = None
        self._digest_limit = -1

    def table(self, limit: int) -> PrimeTable:
        cfg = self.config
        if cfg.cache_file:
            if self._cached_file_table is None:
                self._cached_file_table = load_cache(cfg.cache_file)
            loaded = self._cached_file_table
            if loaded.limit < limit:
                raise CacheLimitError(
                    f"cache limit {loaded.limit} is too small: this experiment "
                    f"requires primes below {limit}"
                )
            table = shrink_table(loaded, limit)
        else:
            self.progress(f"preparing prime table below {limit}")
            table = load_or_build(limit, cfg.cache_dir)
        if limit > self._digest_limit:
            self._digest_limit = limit
            self.cache_digest = table_digest(table)
        return table


# --- CSV writers (LF endings, '.' decimals, 7-digit ratios) ---

def _ratio(value) -> str:
    return f"{value:.7f}"


def _csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(str(c) for c in row) for row in rows)
    return "\n".join(lines) + "\n"


def walk_csv(walk: walks.WalkSeries) -> str:
    rows = (
        (t, walk.sources[t - 1], int(walk.values[t - 1]), int(walk.sums[t]))
        for t in range(1, len(walk) + 1)
    )
    return _csv("t,source,step,sum", rows)


def curve_csv(curve: walks.RatioCurve) -> str:
    rows = (
        (cp, _ratio(m), _ratio(s), n)
        for cp, m, s, n in zip(curve.checkpoints, curve.mean, curve.stdev, curve.n)
    )
    return _csv("checkpoint,mean,stdev,n", rows)


def race_csv(table: walks.RaceTable) -> str:
    header = "x," + ",".join(f"r{r}" for r in table.residues)
    rows = ((x, *counts) for x, counts in zip(table.grid, table.rows))
    return _csv(header, rows)


# --- experiment bodies ---

def _walk_summary(walk: walks.WalkSeries) -> dict:
    stats = walks.walk_stats(walk)
    if stats["qr_ratio"] is not None:
        stats["qr_ratio"] = round(stats["qr_ratio"], 7)
    stats["max_excursion"] = round(stats["max_excursion"], 4)
    return stats


def _run_race(params, ctx):
    grid = params["grid"]
    table = ctx.table(max(grid) + 1)
    tally = walks.race_tally(table, params["mod"], grid)
    summary = {
        "modulus": tally.modulus,
        "residues": list(tally.residues),
        "final_counts": dict(zip(map(str, tally.residues), tally.rows[-1])),
    }
    return summary, [Artifact("race.csv", "csv", race_csv(tally))]


def _run_walk(params, ctx):
    table = ctx.table(max(params["q_limit"], 3))
    walk = walks.rational_walk(
        params["p"],
        params["q_limit"],
        filter=params["filter"],
        direction=params["direction"],
        table=table,
    )
    artifacts = [Artifact("walk.csv", "csv", walk_csv(walk))]
    if len(walk):
        artifacts.append(
            Artifact(
                "walk.svg",
                "svg",
                svgplot.walk_svg(
                    walk.sums,
                    envelope=params["envelope"],
                    title=f"character walk p={params['p']}",
                    timestamp=ctx.config.svg_timestamp,
                ),
            )
        )
    return {"p": params["p"], **_walk_summary(walk)}, artifacts


def _run_gwalk(params, ctx):
    pi = params["pi"]
    table = ctx.table(params["max_norm"] + 1)
    walk = walks.gaussian_walk(
        pi,
        params["max_norm"],
        include_ramified=params["include_ramified"],
        table=table,
    )
    artifacts = [Artifact("gwalk.csv", "csv", walk_csv(walk))]
    if len(walk):
        artifacts.append(
            Artifact(
                "gwalk.svg",
                "svg",
                svgplot.walk_svg(
                    walk.sums,
                    envelope=params["envelope"],
                    title=f"character walk pi={pi}",
                    timestamp=ctx.config.svg_timestamp,
                ),
            )
        )
    return {"pi": str(pi), **_walk_summary(walk)}, artifacts


def _run_avg_ratio(params, ctx):
    checkpoints = params["checkpoints"]
    table = ctx.table(max(checkpoints))
    p_set = [
        int(p)
        for p in table.primes[table.primes < params["p_below"]].tolist()
        if p > 2
    ]
    curve = walks.average_ratio_curve(
        p_set,
        checkpoints,
        filter=params["filter"],
        statistic=params["stat"],
        table=table,
    )
    summary = {
        "statistic": curve.statistic,
        "filter": curve.filter,
        "p_count": len(curve.p_set),
        "skipped": curve.skipped,
        "equal_weighting": True,
        "final_mean": round(curve.mean[-1], 7),
        "final_stdev": round(curve.stdev[-1], 7),
    }
    return summary, [Artifact("avg_ratio.csv", "csv", curve_csv(curve))]


def _run_consecutive(params, ctx):
    checkpoints = params["checkpoints"]
    table = ctx.table(max(checkpoints))
    p_set = [
        int(p)
        for p in table.primes[table.primes < params["p_below"]].tolist()
        if p > 2
    ]
    artifacts = []
    summary = {"p_count": len(p_set), "filter": params["filter"], "curves": {}}
    for n in (2, 3, 4):
        curve = walks.average_ratio_curve(
            p_set,
            checkpoints,
            filter=params["filter"],
            statistic=f"run{n}",
            table=table,
        )
        artifacts.append(
            Artifact(f"consecutive_run{n}.csv", "csv", curve_csv(curve))
        )
        summary["curves"][f"run{n}"] = {
            "final_mean": round(curve.mean[-1], 7),
            "expected_limit": round(0.5 ** (n - 1), 7),
            "skipped": curve.skipped,
        }
    return summary, artifacts


def _run_mod4_split(params, ctx):
    table = ctx.table(max(params["q_limit"], 3))
    summary = {"p": params["p"], "filters": {}}
    artifacts = []
    for filt in walks.FILTERS:
        walk = walks.rational_walk(
            params["p"], params["q_limit"], filter=filt, table=table
        )
        artifacts.append(
            Artifact(f"walk_{filt}.csv", "csv", walk_csv(walk))
        )
        summary["filters"][filt] = _walk_summary(walk)
    return summary, artifacts


def _run_gauss_corr(params, ctx):
    p = params["p"]
    if p % 4 != 1:
        raise ParamError(f"p must be a split norm (prime, 1 mod 4), got {p}")
    try:
        pi1, pi2 = gaussian.split_pair(p)
    except ValueError as exc:
        raise ParamError(str(exc)) from None
    table = ctx.table(params["max_norm"] + 1)
    w1 = walks.gaussian_walk(
        pi1, params["max_norm"], include_ramified=params["include_ramified"],
        table=table,
    )
    w2 = walks.gaussian_walk(
        pi2, params["max_norm"], include_ramified=params["include_ramified"],
        table=table,
    )
    corr = walks.pearson_correlation(w1, w2)
    summary = {
        "p": p,
        "pi1": str(pi1),
        "pi2": str(pi2),
        "steps": len(w1),
        "correlation": round(corr, 7),
        "sign_exponent_odd": ((p - 1) // 4) % 2 == 1,
    }
    artifacts = [
        Artifact("walk_pi1.csv", "csv", walk_csv(w1)),
        Artifact("walk_pi2.csv", "csv", walk_csv(w2)),
    ]
    return summary, artifacts


def _run_gauss_plot(params, ctx):
    max_norm = params["max_norm"]
    table = ctx.table(max_norm + 1)
    primes_list = gaussian.enumerate_gaussian_primes(max_norm, table)
    rows = [
        (g.re, g.im, g.norm(), gaussian.classify_gaussian_prime(g).value)
        for g in primes_list
    ]
    counts = {}
    for _, _, _, kind in rows:
        counts[kind] = counts.get(kind, 0) + 1
    # display includes all associates and conjugates (four-quadrant symmetry)
    shown = set()
    for g in primes_list:
        for u in (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1)):
            for image in (u * g, u * g.conjugate()):
                shown.add((image.re, image.im))
    artifacts = [
        Artifact(
            "gaussian_primes.csv",
            "csv",
            _csv("re,im,norm,kind", rows),
        ),
        Artifact(
            "gauss_plot.svg",
            "svg",
            svgplot.scatter_svg(
                sorted(shown),
                title=f"Gaussian primes, norm <= {max_norm}",
                timestamp=ctx.config.svg_timestamp,
            ),
        ),
    ]
    return {"max_norm": max_norm, "first_quadrant": len(rows), **counts}, artifacts


def _run_log_measure(params, ctx):
    x_max = params["x_max"]
    table = ctx.table(x_max + 1)
    value = walks.logarithmic_measure(
        table, params["mod"], params["leader"], params["laggard"], x_max
    )
    summary = {
        "modulus": params["mod"],
        "leader": params["leader"],
        "laggard": params["laggard"],
        "x_max": x_max,
        "measure": round(value, 7),
    }
    row = [
        (
            params["mod"],
            params["leader"],
            params["laggard"],
            x_max,
            _ratio(value),
        )
    ]
    return summary, [
        Artifact("log_measure.csv", "csv", _csv("modulus,leader,laggard,x_max,measure", row))
    ]


def _int_param(name, default=_REQUIRED, help=""):
    return Param(name, parse_int_scalar, default, help)


_WALK_PARAMS = (
    _int_param("p", help="odd prime modulus"),
    _int_param("q_limit", default=10**6, help="q runs over primes below this"),
    Param("filter", _parse_choice(walks.FILTERS), "all", "residue class of q mod 4"),
    Param("direction", _parse_choice(walks.DIRECTIONS), "qp", "(q|p) or (p|q)"),
    Param("envelope", parse_bool, False, "draw +/- sqrt(t) envelope in SVG"),
)

EXPERIMENTS: dict[str, Experiment] = {}


def _register(name, description, params, run):
    EXPERIMENTS[name] = Experiment(name, description, tuple(params), run)


_register(
    "race",
    "prime race tally per coprime residue class over an x grid",
    (_int_param("mod"), Param("grid", parse_grid, (10, 100, 1000, 10**4, 10**5, 10**6))),
    _run_race,
)
_register(
    "mod3-race",
    "the mod-3 race over powers of ten",
    (Param("grid", parse_grid, (10, 100, 1000, 10**4, 10**5, 10**6)),),
    lambda params, ctx: _run_race({"mod": 3, **params}, ctx),
)
_register("walk", "character walk for one rational modulus", _WALK_PARAMS, _run_walk)
_register(
    "walk97",
    "the p=97 character walk",
    (_int_param("p", default=97),) + _WALK_PARAMS[1:],
    _run_walk,
)
_register(
    "gwalk",
    "character walk for one Gaussian modulus",
    (
        Param("pi", _parse_gauss_param, help="split or inert Gaussian prime"),
        _int_param("max_norm", default=10**5),
        Param("include_ramified", parse_bool, True, "include 1+i as a numerator"),
        Param("envelope", parse_bool, False),
    ),
    _run_gwalk,
)
_register(
    "avg-ratio",
    "mean/stdev of a walk statistic across all odd prime moduli below a bound",
    (
        _int_param("p_below", default=1000),
        Param("checkpoints", parse_grid, (1000, 10**4, 10**5, 10**6)),
        Param("filter", _parse_choice(walks.FILTERS), "all"),
        Param("stat", _parse_choice(walks.STATISTICS), "qr"),
    ),
    _run_avg_ratio,
)
_register(
    "consecutive",
    "equal-sign run ratio curves for lengths 2, 3, 4",
    (
        _int_param("p_below", default=1000),
        Param("checkpoints", parse_grid, (1000, 10**4, 10**5, 10**6)),
        Param("filter", _parse_choice(walks.FILTERS), "all"),
    ),
    _run_consecutive,
)
_register(
    "mod4-split",
    "one modulus walked with all q, q=1 mod 4, and q=3 mod 4",
    (
        _int_param("p", default=97),
        _int_param("q_limit", default=10**6),
    ),
    _run_mod4_split,
)
_register(
    "gauss-corr",
    "correlation of the two walks sharing a split norm",
    (
        _int_param("p", help="rational prime = 1 mod 4"),
        _int_param("max_norm", default=10**5),
        Param("include_ramified", parse_bool, True),
    ),
    _run_gauss_corr,
)
_register(
    "gauss-plot",
    "Gaussian prime list and four-quadrant scatter",
    (_int_param("max_norm", default=103**2),),
    _run_gauss_plot,
)
_register(
    "log-measure",
    "scaled 1/x lead measure for a two-class prime race",
    (
        _int_param("mod"),
        _int_param("leader"),
        _int_param("laggard"),
        _int_param("x_max", default=10**6),
    ),
    _run_log_measure,
)


def validate_params(experiment: Experiment, raw: dict) -> dict:
    known = {p.name for p in experiment.params}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ParamError(
            f"unknown parameter(s) for {experiment.name}: {', '.join(unknown)}; "
            f"known: {', '.join(sorted(known))}"
        )
    values = {}
    for param in experiment.params:
        if param.name in raw:
            values[param.name] = param.parse(raw[param.name])
        elif param.default is _REQUIRED:
            raise ParamError(
                f"experiment {experiment.name} requires parameter {param.name!r}"
            )
        else:
            values[param.name] = param.default
    return values


def run_experiment(config: ExperimentConfig, progress=None) -> ExperimentReport:
    """Validate, run, and write one experiment; returns the report."""
    if config.name not in EXPERIMENTS:
        raise UnknownExperimentError(
            f"unknown experiment {config.name!r}; registered: "
            f"{', '.join(sorted(EXPERIMENTS))}"
        )
    experiment = EXPERIMENTS[config.name]
    params = validate_params(experiment, config.params)
    ctx = RunContext(config, progress)
    started = time.perf_counter()
    summary, artifacts = experiment.run(params, ctx)
    os.makedirs(config.output_dir, exist_ok=True)
    files = []
    for artifact in artifacts:
        if artifact.kind not in config.formats:
            continue
        path = os.path.join(config.output_dir, artifact.filename)
        data = artifact.text.encode()
        with open(path, "wb") as fh:
            fh.write(data)
        files.append(
            {
                "name": artifact.filename,
                "bytes": len(data),
                "sha256": hashlib.sha256(data).hexdigest(),
            }
        )
    files.sort(key=lambda item: item["name"])
    report = ExperimentReport(
        name=config.name,
        params=params,
        summary=summary,
        files=files,
        cache_digest=ctx.cache_digest,
        wall_time_s=time.perf_counter() - started,
        output_dir=config.output_dir,
    )
    if "json" in config.formats:
        with open(os.path.join(config.output_dir, "report.json"), "wb") as fh:
            fh.write(report.to_json().encode())
    return report
