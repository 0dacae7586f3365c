from src.core.groups.linear import IdentityGroup, SpecialLinearGroup
from src.core.groups.orthogonal import OrthogonalGroup, SpecialOrthogonalGroup, WeylGroup
from src.core.groups.spec import SubgroupSpec
from src.core.groups.subgroup import Subgroup


def GroupFactory(spec: SubgroupSpec, n: int) -> Subgroup:
    s = spec.with_dim(n)
    if s.tag == "O":
        return OrthogonalGroup(s)
    if s.tag == "SO":
        return SpecialOrthogonalGroup(s)
    if s.tag == "Weyl":
        return WeylGroup(s)
    if s.tag == "SL":
        return SpecialLinearGroup(s)
    if s.tag == "Identity":
        return IdentityGroup(s)

    raise ValueError(f"Unknown subgroup: {spec.tag}")
