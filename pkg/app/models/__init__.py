# Models package
from app.models.reports import (  # noqa: F401
    CensusReport,
    CharSumReport,
    ConjectureRow,
    K2UniquenessReport,
    K2WitnessReport,
    LinTriReport,
    PermReport,
    PointCountReport,
    SingularDegreeCount,
    SingularProbeReport,
    TZeroBranchReport,
    ZetaTally,
)
from app.models.run_config import RunConfig  # noqa: F401
