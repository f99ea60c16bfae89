from pathlib import Path

from quiverhn import Weight, SubRep, Representation, load_instance
from quiverhn.exactla import Subspace

CD = Path(__file__).parent
DATA = CD / "data"


def get_data_path_by_name(name):
    if name == "four_lines":
        return DATA / "four_lines.json"

    raise ValueError("unknown test file")


def load(name):
    with open(get_data_path_by_name(name), "r", encoding="utf-8") as fh:
        return load_instance(fh)


def span_at_y(m: Representation, *coords: int) -> SubRep:
    """
    The subrepresentation of the bundled instance with Sp(e_i, i in coords) at y
    and each x_k included exactly when its image lies in that span.
    """
    y = Subspace.coordinate(4, [c - 1 for c in coords])
    spaces = {"y": y}
    for a in m.quiver.arrows:
        if m.maps[a.id].column(0) in y:
            spaces[a.tail] = Subspace.full(1)
    return SubRep(m, spaces)


def unit_kappa(m: Representation) -> Weight:
    return Weight.constant(m.quiver, 1)
