//! The registered property suites: every axiom, lemma and theorem of the
//! metric-synthetic development, runnable on seeded random configurations.
//!
//! Each suite emits one record per trial plus at least one negative control,
//! a deliberately violated configuration whose *expected* status is `fail`,
//! so a suite that silently stopped checking anything cannot stay green.

mod axioms;
mod model;
mod synth;
mod waves;

use crate::report::VerificationRecord;

/// Scope for one run of the generated suites.
#[derive(Debug, Clone, Copy)]
pub struct CheckContext {
    pub dim: usize,
    pub trials: u32,
    pub seed: u64,
}

pub struct CheckDef {
    pub id: &'static str,
    pub summary: &'static str,
    pub run: fn(&CheckContext) -> Vec<VerificationRecord>,
}

pub fn registry() -> &'static [CheckDef] {
    &[
        CheckDef {
            id: "basic-picture",
            summary: "obtuse triangle with infinitesimal height: taut-string equality holds, the bracket detects the wobble",
            run: model::basic_picture,
        },
        CheckDef {
            id: "axiom-monad-containment",
            summary: "containment of sphere monad slices at a shared point implies equality",
            run: axioms::monad_containment,
        },
        CheckDef {
            id: "axiom-focused-touching",
            summary: "touching spheres touch in a focused set with a unique touching point",
            run: axioms::focused_touching,
        },
        CheckDef {
            id: "axiom-external-touching",
            summary: "external touching at center distance r+s, with the touching point on both spheres",
            run: axioms::external_touching,
        },
        CheckDef {
            id: "axiom-internal-touching",
            summary: "internal touching at center distance equal to the radius difference",
            run: axioms::internal_touching,
        },
        CheckDef {
            id: "prop-touching-criterion",
            summary: "a one-directional generic membership implication already forces touching",
            run: axioms::touching_criterion,
        },
        CheckDef {
            id: "prop-order-infinitesimal",
            summary: "strict order between scalars survives infinitesimal displacement",
            run: axioms::order_infinitesimal,
        },
        CheckDef {
            id: "lemma-collinear-equivalence",
            summary: "the six generic collinearity conditions agree, on straight and wobbled triples",
            run: synth::collinear_equivalence,
        },
        CheckDef {
            id: "prop-interp-extrap-roundtrip",
            summary: "interpolation and extrapolation invert each other and are characterized by distance plus bracket",
            run: synth::interp_extrap_roundtrip,
        },
        CheckDef {
            id: "prop-collinear-closure",
            summary: "two of the four bracket assertions on a quadruple force all four",
            run: synth::collinear_closure,
        },
        CheckDef {
            id: "prop-source-invariance",
            summary: "extrapolation does not depend on the director along its own line",
            run: synth::source_invariance,
        },
        CheckDef {
            id: "prop-center-alignment",
            summary: "centers of touching spheres are aligned with the touching point",
            run: synth::center_alignment,
        },
        CheckDef {
            id: "prop-ray-semigroup",
            summary: "extrapolation steps compose additively",
            run: synth::ray_semigroup,
        },
        CheckDef {
            id: "prop-ray-isometry",
            summary: "rays are isometries and triples on a ray are aligned",
            run: synth::ray_isometry,
        },
        CheckDef {
            id: "example-nonray-isometry",
            summary: "an isometric curve with infinitesimal curvature is not a ray",
            run: synth::nonray_isometry,
        },
        CheckDef {
            id: "prop-orthogonality-transfer",
            summary: "orthogonality to a contact element transfers along the bracket",
            run: waves::orthogonality_transfer,
        },
        CheckDef {
            id: "prop-inflation-touching",
            summary: "inflation preserves internal touching and the touching-point chain",
            run: waves::inflation_touching,
        },
        CheckDef {
            id: "prop-front-independence",
            summary: "the wavefront point is independent of the representing inside sphere",
            run: waves::front_independence,
        },
        CheckDef {
            id: "prop-flow-semigroup",
            summary: "flowing contact elements composes additively with the front point as focus",
            run: waves::flow_semigroup,
        },
        CheckDef {
            id: "thm-huygens-spheres",
            summary: "the spheres around an inner sphere envelope the concentric outer sphere",
            run: waves::huygens_spheres,
        },
        CheckDef {
            id: "thm-parallel-surface",
            summary: "parallel surfaces are envelopes and compose additively, sample by sample",
            run: waves::parallel_surface_law,
        },
        CheckDef {
            id: "remark-united-position",
            summary: "contact elements at monadically adjacent samples are in united position",
            run: waves::united_position_check,
        },
        CheckDef {
            id: "model-sphere-monad-hyperplane",
            summary: "a sphere's monad slice equals the tangent hyperplane's monad slice",
            run: model::sphere_monad_hyperplane,
        },
        CheckDef {
            id: "model-monad-focused",
            summary: "monads are focused; a scaled monad subset is not",
            run: model::monad_focused,
        },
        CheckDef {
            id: "model-foot-characterization",
            summary: "the foot is the generically equidistant point and yields sphere-hyperplane touching",
            run: model::foot_characterization,
        },
        CheckDef {
            id: "model-chord-orthogonality",
            summary: "common chords are orthogonal to the line of centers",
            run: model::chord_orthogonality,
        },
        CheckDef {
            id: "model-focused-touching",
            summary: "sphere-with-hyperplane touching is focused with the foot as touching point",
            run: model::focused_touching_model,
        },
        CheckDef {
            id: "remark-red-herring",
            summary: "the sphere-plane intersection strictly exceeds the touching set",
            run: model::red_herring,
        },
    ]
}

pub fn find_check(id: &str) -> Option<&'static CheckDef> {
    registry().iter().find(|def| def.id == id)
}
