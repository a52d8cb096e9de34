"""Command-line front end.

Vectors are comma-separated rationals (``4,2,1`` or ``1/3,2/3``) and
permutations comma-separated one-line images (``2,3,1``).  Every subcommand
prints a single JSON document to stdout with rational values rendered as
strings; only ``tc`` and ``virtual-temps`` emit floats (12 significant
digits).  Exit codes: 0 for success / a true predicate, 1 for a false or
infeasible predicate, 2 for usage errors, 3 for invalid input, 4 for a
failed --verify cross-check.

``--json-in FILE`` supplies defaults for d/y/x/sigma/tau/energies/T from a
JSON file; explicit flags win.  THERMO_MAX_N overrides enumeration limits.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import curve as curve_mod
from . import order as order_mod
from . import polytope as polytope_mod
from . import process as process_mod
from . import sdn as sdn_mod
from . import structure as structure_mod
from .errors import DomainError, ResourceLimitError
from .exact import Perm, Vec, format_matrix, mat_vec, parse_vector, rat_parse, vec

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_VERIFY = 4


class VerifyError(RuntimeError):
    """An independent --verify cross-check disagreed with the result."""


def _float12(value: float) -> float:
    return float(f"{value:.12g}")


def _strvec(v: Vec) -> list[str]:
    return [str(q) for q in v]


def _load_json_in(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise DomainError("--json-in must contain a JSON object")
    return data


def _exact_list(values) -> Vec:
    return vec([v if isinstance(v, (int, str)) else str(v) for v in values])


def _get_vector(args: argparse.Namespace, name: str, flag: str) -> Vec:
    raw = getattr(args, name, None)
    if raw is not None:
        return parse_vector(raw)
    data = getattr(args, "_json_in", None)
    if data and name in data:
        return _exact_list(data[name])
    raise DomainError(f"missing required vector {flag}")


def _get_perm(args: argparse.Namespace, name: str, flag: str) -> Perm:
    raw = getattr(args, name, None)
    if raw is not None:
        return Perm.parse(raw)
    data = getattr(args, "_json_in", None)
    if data and name in data:
        return Perm(tuple(int(v) for v in data[name]))
    raise DomainError(f"missing required permutation {flag}")


def _get_energies(args: argparse.Namespace) -> list[float] | None:
    raw = getattr(args, "energies", None)
    if raw is not None:
        return [float(p) for p in raw.split(",")]
    data = getattr(args, "_json_in", None)
    if data and "energies" in data:
        return [float(v) for v in data["energies"]]
    return None


def _get_temperature(args: argparse.Namespace) -> float | None:
    raw = getattr(args, "temperature", None)
    if raw is not None:
        return float(raw)
    data = getattr(args, "_json_in", None)
    if data and "T" in data:
        return float(data["T"])
    return None


def _write_csv(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "csv", None):
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(payload: dict) -> None:
    print(json.dumps(payload))


# -- subcommand handlers ----------------------------------------------------


def _cmd_curve(args) -> int:
    d = _get_vector(args, "d", "-d")
    y = _get_vector(args, "y", "-y")
    built = curve_mod.build_curve(d, y)
    if args.verify:
        for a, _ in built.elbows:
            if curve_mod.eval_curve(built, a) != curve_mod.min_form_value(d, y, a):
                raise VerifyError("interpolated curve disagrees with the min form")
    _write_csv(args, curve_mod.curve_to_csv(built))
    if args.eval is not None:
        value = curve_mod.eval_curve(built, rat_parse(args.eval))
        _emit({"value": str(value)})
    else:
        _emit(curve_mod.curve_to_json(built))
    return EXIT_TRUE


def _cmd_check(args) -> int:
    d = _get_vector(args, "d", "-d")
    y = _get_vector(args, "y", "-y")
    x = _get_vector(args, "x", "-x")
    verdict = order_mod.thermomajorizes(d, y, x)
    if args.verify:
        if order_mod.norm_criterion(d, y, x) != verdict:
            raise VerifyError("norm criterion disagrees with the curve criterion")
        if order_mod.find_transfer(d, y, x).feasible != verdict:
            raise VerifyError("LP feasibility disagrees with the curve criterion")
    _emit({"thermomajorizes": verdict})
    return EXIT_TRUE if verdict else EXIT_FALSE


def _cmd_transfer(args) -> int:
    d = _get_vector(args, "d", "-d")
    y = _get_vector(args, "y", "-y")
    x = _get_vector(args, "x", "-x")
    result = order_mod.find_transfer(d, y, x)
    if args.verify and result.feasible != order_mod.thermomajorizes(d, y, x):
        raise VerifyError("LP verdict disagrees with the curve criterion")
    payload = {"status": result.status, "certificate": None}
    if result.certificate is not None:
        payload["certificate"] = format_matrix(result.certificate)
    _emit(payload)
    return EXIT_TRUE if result.feasible else EXIT_FALSE


def _cmd_vertices(args) -> int:
    d = _get_vector(args, "d", "-d")
    y = _get_vector(args, "y", "-y")
    vs = polytope_mod.enumerate_vertices(d, y)
    if args.verify:
        for v in vs.vertices:
            if not polytope_mod.member(d, y, v):
                raise VerifyError("an enumerated vertex fails the half-space test")
            if not order_mod.thermomajorizes(d, y, v):
                raise VerifyError("an enumerated vertex is not thermomajorized by y")
    if args.csv:
        if len(d) == 3 and args.barycentric:
            _write_csv(args, polytope_mod.barycentric_csv(vs))
        else:
            _write_csv(args, polytope_mod.vertices_to_csv(vs))
    _emit(polytope_mod.vertexset_to_json(vs))
    return EXIT_TRUE


def _cmd_facets(args) -> int:
    d = _get_vector(args, "d", "-d")
    y = _get_vector(args, "y", "-y")
    facets = polytope_mod.facet_description(d, y, irredundant=args.irredundant)
    if args.verify:
        vs = polytope_mod.enumerate_vertices(d, y)
        for f in facets:
            for v in vs.vertices:
                if sum(q for q, b in zip(v, f.mask) if b) > f.bound:
                    raise VerifyError("a vertex violates a facet inequality")
    _emit({"facets": [{"m": list(f.mask), "bound": str(f.bound)} for f in facets]})
    return EXIT_TRUE


def _cmd_dim(args) -> int:
    d = _get_vector(args, "d", "-d")
    y = _get_vector(args, "y", "-y")
    dim = polytope_mod.polytope_dim(d, y)
    if args.verify:
        vs = polytope_mod.enumerate_vertices(d, y)
        if polytope_mod.affine_dim(list(vs.vertices)) != dim:
            raise VerifyError("affine rank of the vertices disagrees with the dimension")
    _emit({"dim": dim})
    return EXIT_TRUE


def _cmd_beta(args) -> int:
    d = _get_vector(args, "d", "-d")
    sigma = _get_perm(args, "sigma", "--sigma")
    tau = _get_perm(args, "tau", "--tau")
    a = process_mod.beta_permutation(d, sigma, tau)
    if args.verify:
        if a != process_mod.beta_five_case(d, sigma, tau):
            raise VerifyError("overlap construction disagrees with the five-case formula")
        if not process_mod.verify_gibbs_stochastic(d, a):
            raise VerifyError("beta-permutation is not Gibbs-stochastic")
        if not process_mod.is_extreme_of_sdn(d, a):
            raise VerifyError("beta-permutation is not extreme")
    payload: dict = {"matrix": format_matrix(a)}
    if args.sparse:
        payload["sparse"] = [
            {"i": i, "j": j, "value": str(v)}
            for i, j, v in process_mod.beta_permutation_sparse(d, sigma, tau)
        ]
    payload["alphas"] = list(process_mod.beta_profile(d, sigma, tau))
    _emit(payload)
    return EXIT_TRUE


def _cmd_to_extreme(args) -> int:
    d = _get_vector(args, "d", "-d")
    y = _get_vector(args, "y", "-y")
    sigma = _get_perm(args, "sigma", "--sigma")
    a, unique = process_mod.transfer_to_extreme(d, y, sigma)
    image = mat_vec(a, y)
    if args.verify and image != polytope_mod.extreme_point(d, y, sigma):
        raise VerifyError("transfer matrix does not map y to the extreme point")
    _emit({"matrix": format_matrix(a), "unique": unique, "image": _strvec(image)})
    return EXIT_TRUE


def _cmd_structure(args) -> int:
    payload: dict = {
        "well_structured": None,
        "stable": None,
        "witnesses": None,
        "subchamber_signs": None,
        "t_c": None,
        "virtual_temperatures": None,
    }
    d = None
    if getattr(args, "d", None) is not None or (args._json_in and "d" in args._json_in):
        d = _get_vector(args, "d", "-d")
    energies = _get_energies(args)
    temperature = _get_temperature(args)
    if d is None and energies is None:
        raise DomainError("structure needs -d or --energies")
    if d is not None:
        report = structure_mod.structure_report(d)
        if args.verify and structure_mod._ws_bruteforce_witness(d) is not None:
            if report.well_structured:
                raise VerifyError("sorted shortcut disagrees with the definitional check")
        payload["well_structured"] = report.well_structured
        payload["stable"] = report.stable
        payload["witnesses"] = {
            "well_structured": [list(s) for s in report.ws_witness] if report.ws_witness else None,
            "stability": [list(s) for s in report.stability_witness]
            if report.stability_witness
            else None,
        }
        if len(d) == 4 and all(a >= b for a, b in zip(d, d[1:])):
            payload["subchamber_signs"] = list(structure_mod.subchamber_classify(d))
    if energies is not None:
        tc = structure_mod.critical_temperature(energies)
        payload["t_c"] = _float12(tc) if tc is not None else None
        if temperature is not None:
            at = structure_mod.structure_at_temperature(energies, temperature)
            payload["at_temperature"] = {
                "well_structured": at.well_structured,
                "stable": at.stable,
            }
        y = None
        if getattr(args, "y", None) is not None or (args._json_in and "y" in args._json_in):
            y = _get_vector(args, "y", "-y")
        if y is not None:
            matrix, pairs = structure_mod.virtual_temperatures(energies, y, temperature)
            payload["virtual_temperatures"] = [
                [None if t is None else _float12(t) for t in row] for row in matrix
            ]
            if temperature is not None:
                payload["degenerate_pairs"] = [list(p) for p in pairs]
    _emit(payload)
    return EXIT_TRUE


def _cmd_cycle_witness(args) -> int:
    d = _get_vector(args, "d", "-d")
    pair = structure_mod.cycle_witness(d)
    if pair is None:
        _emit({"witness": None})
        return EXIT_FALSE
    x, y = pair
    if args.verify:
        if not (order_mod.thermomajorizes(d, x, y) and order_mod.thermomajorizes(d, y, x)):
            raise VerifyError("cycle witness is not mutually majorizing")
    _emit({"witness": {"x": _strvec(x), "y": _strvec(y)}})
    return EXIT_TRUE


def _cmd_degeneracy(args) -> int:
    d = _get_vector(args, "d", "-d")
    y = _get_vector(args, "y", "-y")
    report = structure_mod.degeneracy_report(d, y)
    if args.verify and not report.consistent_with_corollary:
        raise VerifyError("degeneracy report violates the necessary conditions")
    _emit(
        {
            "vertex_count": report.vertex_count,
            "multiplicities": list(report.multiplicities),
            "y_preimage_count": report.y_preimage_count,
            "ratio_degenerate": report.ratio_degenerate,
            "well_structured": report.well_structured,
            "consistent_with_corollary": report.consistent_with_corollary,
        }
    )
    return EXIT_TRUE


def _cmd_sdn_vertices(args) -> int:
    d = _get_vector(args, "d", "-d")
    vertices, non_beta = sdn_mod.non_beta_vertices(d)
    if args.verify:
        import math

        if len(vertices) < math.factorial(len(d)):
            raise VerifyError("vertex count below n!")
        for a in vertices:
            if not process_mod.is_extreme_of_sdn(d, a):
                raise VerifyError("an enumerated matrix is not an extreme point")
    _emit(
        {
            "count": len(vertices),
            "vertices": [format_matrix(a) for a in vertices],
            "non_beta_count": len(non_beta),
            "non_beta_indices": non_beta,
        }
    )
    return EXIT_TRUE


def _cmd_tc(args) -> int:
    energies = _get_energies(args)
    if energies is None:
        raise DomainError("tc needs --energies")
    tc = structure_mod.critical_temperature(energies)
    if args.verify and tc is not None:
        if structure_mod.well_structured_margin(energies, 1.01 * tc) <= 0:
            raise VerifyError("weights not well-structured just above t_c")
        if structure_mod.well_structured_margin(energies, 0.99 * tc) >= 0:
            raise VerifyError("weights well-structured just below t_c")
    _emit({"t_c": _float12(tc) if tc is not None else None})
    return EXIT_TRUE


def _cmd_virtual_temps(args) -> int:
    energies = _get_energies(args)
    if energies is None:
        raise DomainError("virtual-temps needs --energies")
    y = _get_vector(args, "y", "-y")
    temperature = _get_temperature(args)
    matrix, pairs = structure_mod.virtual_temperatures(energies, y, temperature)
    payload = {
        "virtual_temperatures": [
            [None if t is None else _float12(t) for t in row] for row in matrix
        ]
    }
    if temperature is not None:
        payload["degenerate_pairs"] = [list(p) for p in pairs]
    _emit(payload)
    return EXIT_TRUE


def _cmd_zero_temp(args) -> int:
    y = _get_vector(args, "y", "-y")
    x = _get_vector(args, "x", "-x")
    j = args.ground
    result = order_mod.zero_temp_check(y, x, j)
    if args.verify:
        e_j = tuple(Fraction(int(i == j - 1)) for i in range(len(y)))
        if order_mod.find_transfer(e_j, y, x).feasible != result.feasible:
            raise VerifyError("zero-temperature verdict disagrees with the LP")
    payload = {"status": result.status, "certificate": None}
    if result.certificate is not None:
        payload["certificate"] = format_matrix(result.certificate)
    _emit(payload)
    return EXIT_TRUE if result.feasible else EXIT_FALSE


def _cmd_conjecture_probe(args) -> int:
    d = _get_vector(args, "d", "-d")
    y = _get_vector(args, "y", "-y")
    x = _get_vector(args, "x", "-x")
    probe = order_mod.conjecture_probe(d, y, x)
    _emit(
        {
            "criterion_ii": probe.criterion_ii,
            "lp_feasible": probe.lp_feasible,
            "agree": probe.agree,
        }
    )
    return EXIT_TRUE if probe.agree else EXIT_FALSE


# -- argument parsing --------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermo",
        description="Exact thermomajorization curves, orders, and polytopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, **vectors) -> argparse.ArgumentParser:
        p = sub.add_parser(name)
        p.set_defaults(handler=handler)
        p.add_argument("--json-in", dest="json_in", metavar="FILE")
        p.add_argument("--verify", action="store_true")
        if vectors.get("d"):
            p.add_argument("-d", dest="d", metavar="VEC")
        if vectors.get("y"):
            p.add_argument("-y", dest="y", metavar="VEC")
        if vectors.get("x"):
            p.add_argument("-x", dest="x", metavar="VEC")
        if vectors.get("sigma"):
            p.add_argument("--sigma", dest="sigma", metavar="PERM")
        if vectors.get("tau"):
            p.add_argument("--tau", dest="tau", metavar="PERM")
        if vectors.get("energies"):
            p.add_argument("--energies", dest="energies", metavar="LIST")
            p.add_argument("-T", dest="temperature", metavar="FLOAT")
        return p

    p = add("curve", _cmd_curve, d=True, y=True)
    p.add_argument("--eval", dest="eval", metavar="C")
    p.add_argument("--csv", dest="csv", metavar="PATH")

    add("check", _cmd_check, d=True, y=True, x=True)
    add("transfer", _cmd_transfer, d=True, y=True, x=True)

    p = add("vertices", _cmd_vertices, d=True, y=True)
    p.add_argument("--csv", dest="csv", metavar="PATH")
    p.add_argument("--barycentric", action="store_true")

    p = add("facets", _cmd_facets, d=True, y=True)
    p.add_argument("--irredundant", action="store_true")

    add("dim", _cmd_dim, d=True, y=True)
    add("beta", _cmd_beta, d=True, sigma=True, tau=True).add_argument(
        "--sparse", action="store_true"
    )
    add("to-extreme", _cmd_to_extreme, d=True, y=True, sigma=True)
    add("structure", _cmd_structure, d=True, y=True, energies=True)
    add("cycle-witness", _cmd_cycle_witness, d=True)
    add("degeneracy", _cmd_degeneracy, d=True, y=True)
    add("sdn-vertices", _cmd_sdn_vertices, d=True)
    add("tc", _cmd_tc, energies=True)
    add("virtual-temps", _cmd_virtual_temps, y=True, energies=True)

    p = add("zero-temp", _cmd_zero_temp, y=True, x=True)
    p.add_argument("-j", dest="ground", type=int, default=1, metavar="INDEX")

    add("conjecture-probe", _cmd_conjecture_probe, d=True, y=True, x=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        args._json_in = _load_json_in(args.json_in) if getattr(args, "json_in", None) else None
        return args.handler(args)
    except VerifyError as exc:
        print(json.dumps({"error": str(exc), "kind": "verify"}), file=sys.stderr)
        return EXIT_VERIFY
    except (ValueError, ResourceLimitError, OSError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
