"""JSON-ready dict encodings of filters, networks, knots and ridges."""

from dataclasses import asdict

from .circulant import Filter
from .errors import PcnnError
from .factorization import FactorizationResult
from .lattice import FrequencyLattice
from .network import BiasVector, ErrorReport, Layer, PeriodicCnn
from .ridge import ReluKnotSequence
from .spectral import ClosureReport, TorusRidge


def _require(data: dict, *keys: str, kind: str) -> None:
    missing = [k for k in keys if k not in data]
    if missing:
        raise PcnnError(f"{kind} JSON is missing {missing}")


def encode_filter(w: Filter) -> dict:
    return {"coefficients": list(w.coefficients), "period": w.period}


def decode_filter(data: dict) -> Filter:
    _require(data, "coefficients", "period", kind="filter")
    return Filter(tuple(data["coefficients"]), int(data["period"]))


def encode_factorization(result: FactorizationResult) -> dict:
    return {
        "factors": [encode_filter(f) for f in result.factors],
        "depth": result.depth,
        "residual": result.residual,
    }


def encode_network(net: PeriodicCnn) -> dict:
    return {
        "width": net.width,
        "edge_width": net.edge_width,
        "layers": [
            {"filter": encode_filter(layer.filter), "bias": list(layer.bias.values)}
            for layer in net.layers
        ],
        "readout": list(net.readout),
    }


def decode_network(data: dict) -> PeriodicCnn:
    _require(data, "width", "layers", "readout", kind="network")
    width = int(data["width"])
    s = int(data.get("edge_width", 2))
    layers = []
    for layer in data["layers"]:
        _require(layer, "filter", "bias", kind="layer")
        w = decode_filter({"period": width, **layer["filter"]})
        layers.append(Layer(w, BiasVector(tuple(layer["bias"]), s)))
    return PeriodicCnn(tuple(layers), width, tuple(data["readout"]), s)


def encode_knots(knots: ReluKnotSequence) -> dict:
    return {
        "pairs": [list(p) for p in knots.pairs],
        "signs": list(knots.signs),
        "intercept": knots.intercept,
    }


def decode_ridge(data: dict) -> TorusRidge:
    _require(data, "direction", "coefficients", kind="ridge")
    coeffs = []
    for entry in data["coefficients"]:
        m, re = entry[0], entry[1]
        im = entry[2] if len(entry) > 2 else 0.0
        coeffs.append((int(m), complex(re, im)))
    return TorusRidge(tuple(data["direction"]), tuple(coeffs))


def encode_lattice(lattice: FrequencyLattice) -> dict:
    return {
        "generators": [list(g) for g in lattice.generators],
        "hnf_basis": [list(r) for r in lattice.hnf_basis],
        "rank": lattice.rank,
    }


def encode_error_report(report: ErrorReport) -> dict:
    return asdict(report)


def encode_closure(report: ClosureReport) -> dict:
    return {
        "grid": report.grid,
        "tolerance": report.tolerance,
        "passed": report.passed,
        "layers": [asdict(layer) for layer in report.layers],
    }
