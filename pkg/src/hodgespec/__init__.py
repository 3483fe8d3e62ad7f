"""Hodge-Laplace spectra of small simplicial complexes and the inequalities they control."""

from .bounds import (
    InequalityReport,
    cheeger_audit,
    cheeger_check,
    cheeger_general_check,
    colored_mixing_check,
    h_theta,
    mixing_check,
    ramanujan_formulas,
    weak_chromatic,
)
from .combinatorics import count_galleries, count_paths, count_rainbow, indicator_form, spectral_gallery_count
from .complex import (
    Disorientation,
    SimplicialComplex,
    VertexColoring,
    clique_complex,
    degree_profile,
    find_disorientation,
    find_proper_coloring,
    from_maximal_faces,
    link,
)
from .generators import (
    GeneratorSpec,
    clique_gnp,
    complete_tripartite,
    generate,
    latin_tripartite,
    linial_meshulam,
    named,
)
from .hodge import (
    SpectrumReport,
    boundary_matrix,
    deviation_norms,
    edge_adjacency,
    garland_check,
    laplacian,
    spectrum_report,
)
from .io import parse_complex, serialize_complex
from .runner import RunManifest, run
from .satake import (
    SatakeParams,
    build_matrices,
    classify_type,
    closed_form_eigenvalues,
    predicted_spectrum,
    verify_interval_membership,
)

__version__ = "0.1.0"
