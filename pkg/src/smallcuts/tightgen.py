"""Generator for the adversarial instance family and its analytic cores.

The family glues p copies of a 7-node gadget along a shared 3-node axis
(z, b, r), giving 4p+3 nodes; p=1 is the plain gadget.  Red links form the
expensive minimal cover (total 5p), blue links the cheap one (total p+2),
and an optional epsilon surcharge on blue keeps blue strictly slack in
phase 1.  Every build is validated against an exact degree battery; a
mismatch is a construction bug, never a warning.

Node ids: gadget i (0-based) occupies 4i..4i+3 as t, a, x, y; then z=4p,
b=4p+1, r=4p+2.  Role names are 1-based (t1, a1, ...) regardless of p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .covering import Instance, Link, as_cost, cores_bruteforce
from .errors import ConstructionError, InvalidParameterError
from .multigraph import Cut, MultiGraph, cut_degree

EPSILON_DEFAULT = Fraction(1, 100)


@dataclass(frozen=True)
class GadgetParams:
    """Parameters (q, p, k, epsilon); p=1 is the single gadget."""

    q: int
    p: int
    k: int
    epsilon: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in ("q", "p", "k"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise InvalidParameterError(f"{name} must be an integer, got {v!r}")
        if self.q < 1:
            raise InvalidParameterError(f"requires q >= 1, got q={self.q}")
        if self.p < 1:
            raise InvalidParameterError(f"requires p >= 1, got p={self.p}")
        if self.p == 1:
            if self.k < 2 * self.q + 1:
                raise InvalidParameterError(
                    f"single gadget requires k >= 2q+1 = {2 * self.q + 1}, got k={self.k}"
                )
        elif self.k < 2 * self.p * self.q + 1:
            raise InvalidParameterError(
                f"glued form requires k >= 2pq+1 = {2 * self.p * self.q + 1}, got k={self.k}"
            )
        object.__setattr__(self, "epsilon", as_cost(self.epsilon))

    @property
    def n(self) -> int:
        return 4 * self.p + 3


@dataclass(frozen=True)
class LabeledInstance:
    """A generated instance plus the role map and red/blue index sets."""

    instance: Instance
    params: GadgetParams
    roles: dict[str, int]
    red_links: tuple[int, ...]
    blue_links: tuple[int, ...]

    def node(self, role: str) -> int:
        return self.roles[role]

    def red(self) -> list[Link]:
        return [self.instance.links[i] for i in self.red_links]

    def blue(self) -> list[Link]:
        return [self.instance.links[i] for i in self.blue_links]


def _axis(p: int) -> tuple[int, int, int]:
    return 4 * p, 4 * p + 1, 4 * p + 2  # z, b, r


def _gadget_nodes(i: int) -> tuple[int, int, int, int]:
    return 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3  # t, a, x, y


def _build(params: GadgetParams) -> LabeledInstance:
    q, p, k, eps = params.q, params.p, params.k, params.epsilon
    z, b, r = _axis(p)
    n = params.n

    edges: list[tuple[int, int, int]] = []
    for i in range(p):
        t, a, x, y = _gadget_nodes(i)
        edges += [
            (t, a, k - q),
            (a, r, q - 1),
            (t, x, q - 1),
            (a, x, 1),
            (x, y, k - q),
            (y, z, k - q),
        ]
    edges += [(z, b, k - p * q - 1), (b, r, k - p * q)]

    if p == 1:
        labels = ["t", "a", "x", "y", "z", "b", "r"]
    else:
        labels = []
        for i in range(p):
            labels += [f"t{i + 1}", f"a{i + 1}", f"x{i + 1}", f"y{i + 1}"]
        labels += ["z", "b", "r"]
    graph = MultiGraph(n, edges, labels=labels)

    blue = [Link(4 * i, b, 1 + eps, tag="blue") for i in range(p)]
    blue.append(Link(r, z, 2 + eps, tag="blue"))
    red: list[Link] = []
    for i in range(p):
        t, a, x, y = _gadget_nodes(i)
        red += [Link(t, x, 2, tag="red"), Link(a, y, 1, tag="red"), Link(y, r, 2, tag="red")]
    links = tuple(blue + red)

    labeled = LabeledInstance(
        instance=Instance(graph=graph, k=k, links=links),
        params=params,
        roles=conventional_roles(p),
        red_links=tuple(range(p + 1, 4 * p + 1)),
        blue_links=tuple(range(p + 1)),
    )
    _validate_construction(labeled)
    return labeled


def conventional_roles(p: int) -> dict[str, int]:
    """Role-name to node-id map under the fixed node layout, 1-based names."""
    roles: dict[str, int] = {}
    for i in range(p):
        t, a, x, y = _gadget_nodes(i)
        roles.update({f"t{i + 1}": t, f"a{i + 1}": a, f"x{i + 1}": x, f"y{i + 1}": y})
    z, b, r = _axis(p)
    roles.update({"z": z, "b": b, "r": r})
    return roles


def _validate_construction(labeled: LabeledInstance) -> None:
    """Exact degree battery; raises ConstructionError naming the failure."""
    params = labeled.params
    q, p, k = params.q, params.p, params.k
    g = labeled.instance.graph
    z, b, r = _axis(p)

    def check(name: str, got: int, want: int) -> None:
        if got != want:
            raise ConstructionError(f"degree identity failed: {name} = {got}, expected {want}")

    def dcut(nodes: tuple[int, ...]) -> int:
        return cut_degree(g, Cut.of(nodes, g.n))

    check("d(r)", g.node_degree(r), k - p)
    check("d(b)", g.node_degree(b), 2 * k - 2 * p * q - 1)
    check("d(z)", g.node_degree(z), (p + 1) * k - 2 * p * q - 1)
    c_nodes: list[int] = [z]
    for i in range(p):
        t, a, x, y = _gadget_nodes(i)
        s = f"_{i + 1}" if p > 1 else ""
        check(f"d(t{s})", g.node_degree(t), k - 1)
        check(f"d(a{s})", g.node_degree(a), k)
        check(f"d(x{s})", g.node_degree(x), k)
        check(f"d(y{s})", g.node_degree(y), 2 * k - 2 * q)
        check(f"d(A{s})", dcut((t, a)), 2 * q - 1)
        check(f"d(X{s})", dcut((t, a, x)), k - 1)
        check(f"d(Y{s})", dcut((t, a, x, y)), k - 1)
        check(f"d({{x{s},y{s}}})", dcut((x, y)), k)
        c_nodes += [x, y]
    check("d(C)", dcut(tuple(c_nodes)), k - 1)
    if p >= 2:
        check("d(A_1 u A_2)", dcut((0, 1, 4, 5)), 2 * (2 * q - 1))
    if p == 1:
        t, a, x, y = _gadget_nodes(0)
        check("d({y,z})", dcut((y, z)), 2 * k - 2 * q - 1)
        check("d({x,z})", dcut((x, z)), g.node_degree(x) + g.node_degree(z))
        check("d({a,b})", dcut((a, b)), g.node_degree(a) + g.node_degree(b))
    for u, v, _ in g.edges:
        gu = u // 4 if u < 4 * p else None
        gv = v // 4 if v < 4 * p else None
        if gu is not None and gv is not None and gu != gv:
            raise ConstructionError(f"edge ({u},{v}) runs between gadgets {gu + 1} and {gv + 1}")

    red_total = sum(ln.cost for ln in labeled.red())
    blue_total = sum(ln.cost for ln in labeled.blue())
    if red_total != 5 * p:
        raise ConstructionError(f"red cost total {red_total}, expected {5 * p}")
    if blue_total != p + 2 + (p + 1) * params.epsilon:
        raise ConstructionError(
            f"blue cost total {blue_total}, expected {p + 2 + (p + 1) * params.epsilon}"
        )


def single_gadget(q: int, k: int, epsilon: Fraction | int | str = 0) -> LabeledInstance:
    """The 7-node instance; requires k >= 2q+1."""
    return _build(GadgetParams(q=q, p=1, k=k, epsilon=as_cost(epsilon)))


def glued_instance(q: int, p: int, k: int, epsilon: Fraction | int | str = 0) -> LabeledInstance:
    """p gadget copies sharing the z, b, r axis; requires p >= 2, k >= 2pq+1."""
    if p < 2:
        raise InvalidParameterError(f"glued form requires p >= 2, got p={p}; use single_gadget")
    return _build(GadgetParams(q=q, p=p, k=k, epsilon=as_cost(epsilon)))


def generate_instance(
    q: int, p: int, k: int, epsilon: Fraction | int | str = 0
) -> LabeledInstance:
    """Single entry point: p=1 routes to the gadget, p>=2 to the glued form."""
    if p == 1:
        return single_gadget(q, k, epsilon)
    return glued_instance(q, p, k, epsilon)


def core_masks(params: GadgetParams) -> list[int]:
    p = params.p
    z, _, r = _axis(p)
    c_mask = 1 << z
    for i in range(p):
        c_mask |= 1 << (4 * i + 2) | 1 << (4 * i + 3)
    masks = [1 << (4 * i) for i in range(p)] + [1 << r, c_mask]
    return sorted(masks)


def analytic_cores(params: GadgetParams) -> list[Cut]:
    """The p+2 initial cores {t_1},...,{t_p},{r},C without any enumeration."""
    n = params.n
    return [Cut(m, n) for m in core_masks(params)]


class AnalyticCoreOracle:
    """CoreOracle that answers the empty selection from the closed form.

    Nonempty selections fall back to exhaustive core discovery, which
    refuses above the enumeration bound; a full two-phase run on a
    generated instance never needs that path because coverage testing, not
    core discovery, decides termination.
    """

    def __init__(self, labeled: LabeledInstance) -> None:
        self.labeled = labeled
        self._initial = analytic_cores(labeled.params)

    def initial_cores(self) -> list[Cut]:
        return list(self._initial)

    def cores(self, inst: Instance, selected) -> list[Cut]:
        own = self.labeled.instance
        if inst.k != own.k or inst.graph.n != own.graph.n or inst.graph.edges != own.graph.edges:
            raise InvalidParameterError("analytic core oracle queried with a different instance")
        if not list(selected):
            return list(self._initial)
        return cores_bruteforce(inst, list(selected))


def analytic_initial_cores(params: GadgetParams | LabeledInstance) -> AnalyticCoreOracle:
    labeled = params if isinstance(params, LabeledInstance) else _build(params)
    return AnalyticCoreOracle(labeled)


@dataclass(frozen=True)
class FamilySlices:
    """Analytic cut lists predicted for the generated family.

    cores: the p+2 minimal violated cuts of the empty selection.
    fr_minus_frc: the small cuts avoiding r that do not contain all of C,
    namely the singletons {t_i}, every nonempty union of the A_i, and each
    X_i and Y_i.
    """

    cores: tuple[Cut, ...]
    fr_minus_frc: tuple[Cut, ...]


def expected_family_slices(params: GadgetParams) -> FamilySlices:
    p, n = params.p, params.n
    a_masks = [0b11 << (4 * i) for i in range(p)]
    masks: list[int] = [1 << (4 * i) for i in range(p)]
    for size in range(1, p + 1):
        for subset in combinations(range(p), size):
            union = 0
            for i in subset:
                union |= a_masks[i]
            masks.append(union)
    masks += [0b111 << (4 * i) for i in range(p)]
    masks += [0b1111 << (4 * i) for i in range(p)]
    cuts = [Cut(m, n) for m in masks]
    cuts.sort(key=lambda s: (s.size(), s.mask))
    return FamilySlices(cores=tuple(analytic_cores(params)), fr_minus_frc=tuple(cuts))


def infer_params(inst: Instance) -> GadgetParams | None:
    """Back out (q, p, k, epsilon) from an instance shaped like a build.

    Purely arithmetic readout; callers must confirm with detect_generated,
    which rebuilds and compares.  Returns None when the shape is wrong.
    """
    n = inst.n
    if n < 7 or n % 4 != 3:
        return None
    p = (n - 3) // 4
    q = inst.k - inst.graph.multiplicity(0, 1)
    b = 4 * p + 1
    eps = None
    for ln in inst.links:
        if ln.endpoints() == (0, b):
            eps = ln.cost - 1
            break
    if eps is None or eps < 0:
        return None
    try:
        return GadgetParams(q=q, p=p, k=inst.k, epsilon=eps)
    except InvalidParameterError:
        return None


def detect_generated(inst: Instance) -> LabeledInstance | None:
    """Rebuild from inferred parameters and accept only an exact match.

    Equality is over k, edge records, and the full link tuples (endpoints,
    costs, tags, order), so a touched-up file fails closed to None.
    """
    params = infer_params(inst)
    if params is None:
        return None
    try:
        rebuilt = _build(params)
    except (InvalidParameterError, ConstructionError):
        return None
    own = rebuilt.instance
    if inst.k == own.k and inst.graph.edges == own.graph.edges and inst.links == own.links:
        return LabeledInstance(
            instance=inst,
            params=params,
            roles=dict(rebuilt.roles),
            red_links=rebuilt.red_links,
            blue_links=rebuilt.blue_links,
        )
    return None
