//! The catalog of the 31 cubic types: formulas, canonical base points,
//! proximity-graph rows, ordinary decompositions, quadratic decompositions,
//! parameter orbits, length data and inverse types. Everything is stored
//! textually and parsed on demand, so the library's own parser and resolver
//! are the single source of interpretation.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::bubble::BubblePoint;
use crate::error::Result;
use crate::graph::{EnrichedGraph, ProximityGraph};
use crate::lang::{parse_map, parse_point, ParamEnv};
use crate::maps::CremonaMap;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    None,
    Gamma,
    AB,
}

/// How the normalizing automorphism is constructed for a type.
#[derive(Clone, Debug)]
pub enum Plan {
    /// Match the listed roles (proper points or first-neighborhood
    /// directions) with a linear solve, then read the listed residuals.
    Anchors {
        anchors: &'static [usize],
        residuals: &'static [ResidualStep],
    },
    /// Normalize the unique conic through the five points, matching the
    /// listed roles as marks.
    Conic { marks: &'static [usize] },
}

/// One residual read in a normalization: the role whose last standard
/// coordinate (or whole position) is still free after the anchors.
#[derive(Clone, Debug)]
pub struct ResidualStep {
    pub role: usize,
    /// values the residual must avoid (on top of infinity, which is always
    /// excluded for tail reads)
    pub excluded: &'static [i64],
    /// correction stage index into `correction_matrix`, or the parameter
    /// extraction marker
    pub action: ResidualAction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidualAction {
    /// Apply the type's correction automorphism for this stage.
    Correct(usize),
    /// The residual is the parameter (types 26-31).
    Param,
}

pub struct TypeRecord {
    pub id: usize,
    pub formula: &'static str,
    pub param_kind: ParamKind,
    /// canonical base points in role order (role 0 carries multiplicity 2)
    pub points: [&'static str; 5],
    /// proximity arcs between roles, and the optional line as role set
    pub role_arcs: &'static [(usize, usize)],
    pub role_line: Option<[usize; 3]>,
    pub oq: u32,
    pub q: u32,
    pub inverse: usize,
    /// outermost-first automorphisms of the ordinary decomposition
    /// (interleaved with sigma)
    pub table3: &'static [&'static str],
    /// general quadratic decomposition script, when listed
    pub table4: Option<&'static str>,
    pub plan: Plan,
}

pub static TYPES: [TypeRecord; 31] = [
    TypeRecord {
        id: 1,
        formula: "[x*z^2 + y^3 : y*z^2 : z^3]",
        param_kind: ParamKind::None,
        points: [
            "[1:0:0]",
            "([1:0:0], 0)",
            "([1:0:0], 0, inf)",
            "([1:0:0], 0, inf, -1)",
            "([1:0:0], 0, inf, -1, 0)",
        ],
        role_arcs: &[(1, 0), (2, 1), (2, 0), (3, 2), (4, 3)],
        role_line: None,
        oq: 6,
        q: 3,
        inverse: 1,
        table3: &[
            "[27y + 225z : 12y : 8x - 8y]",
            "[2x + 5y : 5y - x : 15x + 15z]",
            "[2x + 2z : 5x : 3x + 10y - 2z]",
            "[x - y : z + 2y - x : 2y]",
            "[z : z - 2x : 2x + 2y - z]",
            "[x - y : z - x + y : 2x - y]",
            "[y : y + z : x]",
        ],
        table4: Some("[x:z:y] o rho o [z:y:x] o tau o [z:y:-x] o rho o [x:z:y]"),
        plan: Plan::Anchors {
            anchors: &[0, 1],
            residuals: &[
                ResidualStep {
                    role: 3,
                    excluded: &[0],
                    action: ResidualAction::Correct(0),
                },
                ResidualStep {
                    role: 4,
                    excluded: &[],
                    action: ResidualAction::Correct(1),
                },
            ],
        },
    },
    TypeRecord {
        id: 2,
        formula: "[x*(x^2 + y*z) : y^3 : y*(x^2 + y*z)]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "([0:0:1], 0)",
            "([0:0:1], 0, -1)",
            "([0:0:1], 0, -1, 0)",
            "([0:0:1], 0, -1, 0, 0)",
        ],
        role_arcs: &[(1, 0), (2, 1), (3, 2), (4, 3)],
        role_line: None,
        oq: 5,
        q: 2,
        inverse: 8,
        table3: &[
            "[8y - 8x : x + z : 4x]",
            "[x + y : y : z - x]",
            "[2x : -y - 2x : y + 2x - 2z]",
            "[y - x : x : x + z - y]",
            "[x : z - x : y]",
            "[x : z : x + y]",
        ],
        table4: Some("[x+z:y:z] o rho o [y-x:z:x] o tau o [y:x:-z]"),
        plan: Plan::Conic { marks: &[0] },
    },
    TypeRecord {
        id: 3,
        formula: "[x*z^2 : x^3 + x*y*z : z^3]",
        param_kind: ParamKind::None,
        points: [
            "[0:1:0]",
            "([0:1:0], inf)",
            "([0:1:0], 0)",
            "([0:1:0], 0, -1)",
            "([0:1:0], 0, -1, 0)",
        ],
        role_arcs: &[(1, 0), (2, 0), (3, 2), (4, 3)],
        role_line: None,
        oq: 5,
        q: 2,
        inverse: 5,
        table3: &[
            "[4y : 4y + 3x : 4y + 4z]",
            "[3x - z : z - y : y]",
            "[9z + 3x : y : 3z - y]",
            "[3y + 4z - x : x - z : 3x]",
            "[y + z : x - y + z : y - z]",
            "[2y : x + z : x - z]",
        ],
        table4: Some("[z:x:y] o rho o [z:y:x] o tau o [z:x:-y]"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2],
            residuals: &[
                ResidualStep {
                    role: 3,
                    excluded: &[0],
                    action: ResidualAction::Correct(0),
                },
                ResidualStep {
                    role: 4,
                    excluded: &[],
                    action: ResidualAction::Correct(1),
                },
            ],
        },
    },
    TypeRecord {
        id: 4,
        formula: "[x^2*z : x^3 + z^3 + x*y*z : x*z^2]",
        param_kind: ParamKind::None,
        points: [
            "[0:1:0]",
            "([0:1:0], inf)",
            "([0:1:0], 0)",
            "([0:1:0], inf, -1)",
            "([0:1:0], 0, -1)",
        ],
        role_arcs: &[(1, 0), (2, 0), (3, 1), (4, 2)],
        role_line: None,
        oq: 4,
        q: 2,
        inverse: 4,
        table3: &[
            "[y + z : x + 2z : z - y]",
            "[2x : y - z : y + z]",
            "[y - 4x - 4z : x : z]",
            "[y + z : x : y - z]",
            "[2y : x + z : x - z]",
        ],
        table4: Some("[y:z:x] o tau o [y:x:-z] o tau o [x:z:-y]"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2],
            residuals: &[
                ResidualStep {
                    role: 3,
                    excluded: &[0],
                    action: ResidualAction::Correct(0),
                },
                ResidualStep {
                    role: 4,
                    excluded: &[0],
                    action: ResidualAction::Correct(1),
                },
            ],
        },
    },
    TypeRecord {
        id: 5,
        formula: "[x^2*z : x^2*y + z^3 : x*z^2]",
        param_kind: ParamKind::None,
        points: [
            "[0:1:0]",
            "[1:0:0]",
            "([0:1:0], inf)",
            "([0:1:0], inf, inf)",
            "([0:1:0], inf, inf, -1)",
        ],
        role_arcs: &[(2, 0), (3, 2), (3, 0), (4, 3)],
        role_line: None,
        oq: 5,
        q: 2,
        inverse: 3,
        table3: &[
            "[4y + 4z : 12z + x + 9y : 6y + 8z]",
            "[2y + z : -2x - z : 2x + 2z]",
            "[2y : 2y - z + x : z - y]",
            "[2z + 2x - y : 2z - y : y]",
            "[y - x - z : 2z + x : x + z]",
            "[x - z : y : z]",
        ],
        table4: Some("[x:z:y] o tau o [-z:-y:x+z] o rho o [y-z:x:z]"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2],
            residuals: &[ResidualStep {
                role: 4,
                excluded: &[0],
                action: ResidualAction::Correct(0),
            }],
        },
    },
    TypeRecord {
        id: 6,
        formula: "[x^2*(x - y) : x*y*(x - y) : x*y*z + y^3]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[1:1:-1]",
            "([0:0:1], 0)",
            "([0:0:1], inf)",
            "([0:0:1], inf, -1)",
        ],
        role_arcs: &[(2, 0), (3, 0), (4, 3)],
        role_line: None,
        oq: 4,
        q: 2,
        inverse: 6,
        table3: &[
            "[-2y - 4x : 4x : 2x + y + 2z]",
            "[x - 2z : z : y]",
            "[y : z - 2y - x : 2x]",
            "[y - x : x + y : 2z]",
            "[x - y : x + y : x + y + 2z]",
        ],
        table4: Some("[-y:z:x] o rho o [x+y+2z:y+z:-z] o rho o [x+z:x:y-x]"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 3],
            residuals: &[ResidualStep {
                role: 4,
                excluded: &[0],
                action: ResidualAction::Correct(0),
            }],
        },
    },
    TypeRecord {
        id: 7,
        formula: "[x*(x^2 + y*z) : y*(x^2 + y*z) : x*y^2]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[0:1:0]",
            "([0:0:1], 0)",
            "([0:0:1], 0, -1)",
            "([0:0:1], 0, -1, 0)",
        ],
        role_arcs: &[(2, 0), (3, 2), (4, 3)],
        role_line: None,
        oq: 4,
        q: 2,
        inverse: 17,
        table3: &[
            "[y - x : y : y - z]",
            "[x : z : z + y]",
            "[z : y - x - z : x]",
            "[x : y : x + z]",
            "[x : x + z : y - x]",
        ],
        table4: Some("[-x-z:z:y] o rho o [-z-y:x+y+z:z] o rho o [z-x:y:x]"),
        plan: Plan::Conic { marks: &[0, 1] },
    },
    TypeRecord {
        id: 8,
        formula: "[x*y*z : y*z^2 : z^3 - x^2*y]",
        param_kind: ParamKind::None,
        points: [
            "[0:1:0]",
            "[1:0:0]",
            "([1:0:0], inf)",
            "([1:0:0], inf, 0)",
            "([1:0:0], inf, 0, 1)",
        ],
        role_arcs: &[(2, 1), (3, 2), (4, 3)],
        role_line: Some([1, 2, 3]),
        oq: 5,
        q: 2,
        inverse: 2,
        table3: &[
            "[2y : -4x - 4y : 8x + 9y + z]",
            "[2x - 2y : 2y - x : x + 2z]",
            "[x + y : x : z - y - 2x]",
            "[x + y : -2x : 2x + y + z]",
            "[2x + y : y : 2x - y + 2z]",
            "[-z : x + z : y + z]",
        ],
        table4: Some("[y:x:-z] o tau o [z:x+z:y] o rho o [x-z:y:z]"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2],
            residuals: &[ResidualStep {
                role: 4,
                excluded: &[0],
                action: ResidualAction::Correct(0),
            }],
        },
    },
    TypeRecord {
        id: 9,
        formula: "[y^2*z : x*(x*z + y^2) : y*(x*z + y^2)]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[1:0:0]",
            "([1:0:0], 0)",
            "([1:0:0], 0, -1)",
            "([1:0:0], 0, -1, 0)",
        ],
        role_arcs: &[(2, 1), (3, 2), (4, 3)],
        role_line: None,
        oq: 4,
        q: 2,
        inverse: 9,
        table3: &[
            "[z - y : x : z]",
            "[x : y + z : z]",
            "[x : x - y : z]",
            "[x : y + z : z]",
            "[x : z - y : y]",
        ],
        table4: Some("[y:-x-z:z] o rho o [-2z-x:x+y+z:z] o rho o [x-y:z:y]"),
        plan: Plan::Conic { marks: &[0, 1] },
    },
    TypeRecord {
        id: 10,
        formula: "[x^3 : y^2*z : x*y*z]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[0:1:0]",
            "([0:0:1], 0)",
            "([0:1:0], 0)",
            "([0:1:0], 0, 0)",
        ],
        role_arcs: &[(2, 0), (3, 1), (4, 3)],
        role_line: Some([1, 3, 4]),
        oq: 3,
        q: 2,
        inverse: 10,
        table3: &[
            "[x + y : -y - z : y]",
            "[z - x : x + y : -y]",
            "[z : x - z : y + z - x]",
            "[x : x + z : x + y]",
        ],
        table4: Some("[y:x+z:z] o rho o [z-y:x+z:y] o rho o [z-x:y:x]"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 3],
            residuals: &[],
        },
    },
    TypeRecord {
        id: 11,
        formula: "[x*(y^2 + x*z) : y*(y^2 + x*z) : x*y*z]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[1:0:0]",
            "([0:0:1], inf)",
            "([1:0:0], 0)",
            "([1:0:0], 0, -1)",
        ],
        role_arcs: &[(2, 0), (3, 1), (4, 3)],
        role_line: None,
        oq: 3,
        q: 2,
        inverse: 18,
        table3: &[
            "[z : x : y]",
            "[x : x + z - y : z]",
            "[x : y + z : z]",
            "[x : z - y : y]",
        ],
        table4: Some("[x:z:z-y] o rho o [z:x+y+z:y] o rho o [z-y:x:y]"),
        plan: Plan::Conic { marks: &[0, 1] },
    },
    TypeRecord {
        id: 12,
        formula: "[x*z^2 : x^2*y : z^3]",
        param_kind: ParamKind::None,
        points: [
            "[0:1:0]",
            "[1:0:0]",
            "([0:1:0], inf)",
            "([1:0:0], inf)",
            "([0:1:0], inf, inf)",
        ],
        role_arcs: &[(2, 0), (3, 1), (4, 2), (4, 0)],
        role_line: None,
        oq: 3,
        q: 2,
        inverse: 12,
        table3: &[
            "[-x : x - z : x + y]",
            "[y - x : x : y + z]",
            "[y : x + y : z - x - y]",
            "[-z : x + z : y - z]",
        ],
        table4: Some("[z:x+z:y] o rho o [x+z-y:z:y] o rho o [y-z:x:z]"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 3],
            residuals: &[],
        },
    },
    TypeRecord {
        id: 13,
        formula: "[x*(y^2 + x*z) : y*(y^2 + x*z) : x*y^2]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[1:0:0]",
            "([1:0:0], 0)",
            "([0:0:1], inf)",
            "([0:0:1], inf, -1)",
        ],
        role_arcs: &[(2, 1), (3, 0), (4, 3)],
        role_line: None,
        oq: 3,
        q: 2,
        inverse: 20,
        table3: &[
            "[x : y : z]",
            "[z - y : z : x + z - y]",
            "[x : y + z : z]",
            "[z : x - y : y]",
        ],
        table4: Some("[z:y:x] o sigma o [y+x+z:z:y] o rho o [z-y:x:y]"),
        plan: Plan::Conic { marks: &[0, 1] },
    },
    TypeRecord {
        id: 14,
        formula: "[x^3 : x^2*y : (x - y)*y*z]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[0:1:0]",
            "([0:0:1], 0)",
            "([0:0:1], 1)",
            "([0:1:0], 0)",
        ],
        role_arcs: &[(2, 0), (3, 0), (4, 1)],
        role_line: None,
        oq: 3,
        q: 2,
        inverse: 15,
        table3: &[
            "[x + z : z : y]",
            "[x : z - y : z - x]",
            "[x : y + z : z]",
            "[y : z - x : x]",
        ],
        table4: Some("[y:y+z:-x] o rho o [x+z:z-y:y] o rho o [z-x:y:x]"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 4],
            residuals: &[ResidualStep {
                role: 3,
                excluded: &[0],
                action: ResidualAction::Correct(0),
            }],
        },
    },
    TypeRecord {
        id: 15,
        formula: "[x^2*y : x*y^2 : (x - y)^2*z]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[0:1:0]",
            "[1:0:0]",
            "([0:0:1], 1)",
            "([0:0:1], 1, inf)",
        ],
        role_arcs: &[(3, 0), (4, 3), (4, 0)],
        role_line: None,
        oq: 3,
        q: 2,
        inverse: 14,
        table3: &[
            "[z - y : y + z : 4y - 4x]",
            "[x + y : y : z]",
            "[y - x + 2z : x - y : x + y]",
            "[x : y : z]",
        ],
        table4: Some("[x:z+x:y] o rho o [y:z:x-y] o sigma"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 3],
            residuals: &[],
        },
    },
    TypeRecord {
        id: 16,
        formula: "[x*(x^2 + y*z) : y*(x^2 + y*z) : x*y*(x - y)]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[0:1:0]",
            "[1:1:-1]",
            "([0:0:1], 0)",
            "([0:0:1], 0, -1)",
        ],
        role_arcs: &[(3, 0), (4, 3)],
        role_line: None,
        oq: 3,
        q: 2,
        inverse: 24,
        table3: &[
            "[-x : y : 2y - z]",
            "[y : x : x + z]",
            "[x + z : -z : y - 2x - 2z]",
            "[x : x + z : y - x]",
        ],
        table4: Some("[x:z:y+z] o rho o [y:x-z-y:y+z] o sigma o [x+z:y-x:x]"),
        plan: Plan::Conic { marks: &[0, 1, 2] },
    },
    TypeRecord {
        id: 17,
        formula: "[x*y*z : y^2*z : x*(y^2 - x*z)]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[1:0:0]",
            "[0:1:0]",
            "([1:0:0], 0)",
            "([1:0:0], 0, 1)",
        ],
        role_arcs: &[(3, 1), (4, 3)],
        role_line: Some([1, 2, 3]),
        oq: 4,
        q: 2,
        inverse: 7,
        table3: &[
            "[-y : x - y : 3y + z]",
            "[x + y : y : z]",
            "[z : x : y - x + z]",
            "[x : y - x : z]",
            "[y : y + z : x - y]",
        ],
        table4: Some("[y:x:-z] o tau o sigma"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2],
            residuals: &[ResidualStep {
                role: 4,
                excluded: &[0],
                action: ResidualAction::Correct(0),
            }],
        },
    },
    TypeRecord {
        id: 18,
        formula: "[x^2*(y - z) : x*y*(y - z) : y^2*z]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[1:0:0]",
            "[0:1:0]",
            "([1:0:0], 1)",
            "([1:0:0], 1, 0)",
        ],
        role_arcs: &[(3, 1), (4, 3)],
        role_line: Some([1, 3, 4]),
        oq: 3,
        q: 2,
        inverse: 11,
        table3: &[
            "[x + z : z : z - y]",
            "[x : y + z : z]",
            "[y - x : z - y - x : x]",
            "[x : y : z]",
        ],
        table4: Some("[x+z:z:-y] o rho o [y-x:y-z:x] o sigma"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 3],
            residuals: &[],
        },
    },
    TypeRecord {
        id: 19,
        formula: "[x*(x^2 + y*z + x*z) : y*(x^2 + y*z + x*z) : x*y*z]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[0:1:0]",
            "[1:0:-1]",
            "([0:1:0], 0)",
            "([0:1:0], 0, -1)",
        ],
        role_arcs: &[(3, 1), (4, 3)],
        role_line: None,
        oq: 3,
        q: 2,
        inverse: 19,
        table3: &[
            "[x : z : -y]",
            "[y : z - y : x]",
            "[x : z : y - x]",
            "[x : x + z : y]",
        ],
        table4: Some("[z:x:y+z] o rho o [z:x-y-z:y] o sigma o [x+z:y:x]"),
        plan: Plan::Conic { marks: &[0, 1, 2] },
    },
    TypeRecord {
        id: 20,
        formula: "[x^2*z : x*y*z : y^2*(x - z)]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[1:0:0]",
            "[0:1:0]",
            "([1:0:0], 0)",
            "([0:1:0], 1)",
        ],
        role_arcs: &[(3, 1), (4, 2)],
        role_line: Some([1, 2, 3]),
        oq: 3,
        q: 2,
        inverse: 13,
        table3: &[
            "[z - y : z : x + z]",
            "[x : y + z : z]",
            "[z - x - y : x - y : y]",
            "[x : y : z]",
        ],
        table4: Some("[y:z:x+z] o rho o [z-x-y:x:y] o sigma"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 4],
            residuals: &[],
        },
    },
    TypeRecord {
        id: 21,
        formula: "[x*(x*y + x*z + y*z) : y*(x*y + x*z + y*z) : x*y*z]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[1:0:0]",
            "[0:1:0]",
            "([1:0:0], -1)",
            "([0:1:0], -1)",
        ],
        role_arcs: &[(3, 1), (4, 2)],
        role_line: None,
        oq: 2,
        q: 2,
        inverse: 21,
        table3: &["[x : y : z]", "[x : y : x + y + z]", "[x : y : z]"],
        table4: None,
        plan: Plan::Conic { marks: &[0, 1, 2] },
    },
    TypeRecord {
        id: 22,
        formula: "[x*z*(x + y) : y*z*(x + y) : x*y^2]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[1:0:0]",
            "[0:1:0]",
            "([0:0:1], -1)",
            "([1:0:0], 0)",
        ],
        role_arcs: &[(3, 0), (4, 1)],
        role_line: Some([1, 2, 4]),
        oq: 3,
        q: 2,
        inverse: 22,
        table3: &[
            "[y - 2z : z : x + z]",
            "[x : y + z : z]",
            "[x + y - z : 2x + y : -x - y]",
            "[x : y : z]",
        ],
        table4: Some("[y-z:z:x+z] o rho o [z-x-y:x:x+y] o sigma"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 3],
            residuals: &[],
        },
    },
    TypeRecord {
        id: 23,
        formula: "[x*(x^2 + x*y + y*z) : y*(x^2 + x*y + y*z) : x*y*z]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[0:1:0]",
            "[1:-1:0]",
            "([0:0:1], 0)",
            "([0:1:0], -1)",
        ],
        role_arcs: &[(3, 0), (4, 1)],
        role_line: None,
        oq: 2,
        q: 2,
        inverse: 25,
        table3: &["[x : -y : z]", "[y + z : z : x + y + z]", "[z : x : -x - y]"],
        table4: None,
        plan: Plan::Conic { marks: &[0, 1, 2] },
    },
    TypeRecord {
        id: 24,
        formula: "[x*y*z : (y - x)*y*z : x*(x - y)*(y - z)]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[1:0:0]",
            "[0:1:0]",
            "[1:1:0]",
            "([1:0:0], 1)",
        ],
        role_arcs: &[(4, 1)],
        role_line: Some([1, 2, 3]),
        oq: 3,
        q: 2,
        inverse: 16,
        table3: &[
            "[x : y : z]",
            "[x + z : z - x : 6z - 4y]",
            "[x : y + z : z]",
            "[y - 2x : 2z - 3y : y]",
        ],
        table4: Some("[y+z:-z:x-z] o rho o [x-y+z:y-x:x] o sigma"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 3],
            residuals: &[ResidualStep {
                role: 4,
                excluded: &[0],
                action: ResidualAction::Correct(0),
            }],
        },
    },
    TypeRecord {
        id: 25,
        formula: "[x*(x + y)*(y + z) : y*(x + y)*(y + z) : x*y*z]",
        param_kind: ParamKind::None,
        points: [
            "[0:0:1]",
            "[1:0:0]",
            "[0:1:-1]",
            "[1:-1:0]",
            "([1:0:0], 0)",
        ],
        role_arcs: &[(4, 1)],
        role_line: Some([1, 2, 4]),
        oq: 2,
        q: 2,
        inverse: 23,
        table3: &["[-x : z : y]", "[z : x + y : y + z]", "[z : y : -x - y]"],
        table4: None,
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 3],
            residuals: &[],
        },
    },
    TypeRecord {
        id: 26,
        formula: "[x*(g*x*z - g*y^2 - x*y + y^2) : g*x*y*(z - y) : g*y^2*(z - x)]",
        param_kind: ParamKind::Gamma,
        points: ["[0:0:1]", "[1:0:0]", "[0:1:0]", "[1:1:1]", "([1:0:0], 1/g)"],
        role_arcs: &[(4, 1)],
        role_line: None,
        oq: 2,
        q: 2,
        inverse: 26,
        table3: &[
            "[g*(g*x - 2x + y) + x + z : g*(g*x - x + y) : g*(g*x + y)]",
            "[g*((g - 1)*x - g*y + z) : g*(y - x) : g*x]",
            "[x : y : z]",
        ],
        table4: None,
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 3],
            residuals: &[ResidualStep {
                role: 4,
                excluded: &[0, 1],
                action: ResidualAction::Param,
            }],
        },
    },
    TypeRecord {
        id: 27,
        formula: "[g*x^2*y : g*x*y^2 : (x + y)*(x + g*y)*z]",
        param_kind: ParamKind::Gamma,
        points: [
            "[0:0:1]",
            "[0:1:0]",
            "[1:0:0]",
            "([0:0:1], -1)",
            "([0:0:1], -1/g)",
        ],
        role_arcs: &[(3, 0), (4, 0)],
        role_line: None,
        oq: 2,
        q: 2,
        inverse: 27,
        table3: &[
            "[g*(g*x + y) : -g*(x + y) : (g - 1)^2*z]",
            "[g*x + y : -x - y : (g - 1)*z]",
            "[x : y : z]",
        ],
        table4: None,
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 3],
            residuals: &[ResidualStep {
                role: 4,
                excluded: &[0, -1],
                action: ResidualAction::Param,
            }],
        },
    },
    TypeRecord {
        id: 28,
        formula: "[x*y*(x - y) : x*z*(y - g*x) : z*(y + g*x)*(y - g*x)]",
        param_kind: ParamKind::Gamma,
        points: ["[0:0:1]", "[0:1:0]", "[1:0:0]", "[1:1:0]", "([0:0:1], g)"],
        role_arcs: &[(4, 0)],
        role_line: Some([1, 2, 3]),
        oq: 3,
        q: 2,
        inverse: 28,
        table3: &[
            "[z : g^2*(x + y) : g^2*(x + g*x + g*y)]",
            "[x + g*y - y : -g*y : z]",
            "[x : x - g*y : -g*z]",
            "[x : y : z]",
        ],
        table4: Some("[x:z-y:2gz-(1+g)y] o rho o [(1-g)z:x-y:x-gy] o sigma"),
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 3],
            residuals: &[ResidualStep {
                role: 4,
                excluded: &[0, 1],
                action: ResidualAction::Param,
            }],
        },
    },
    TypeRecord {
        id: 29,
        formula: "[x*y*(x - y) : x*(x*y - g*x*y + g*x*z - y*z) : x^2*y - g^2*x^2*y + g^2*x^2*z - y^2*z]",
        param_kind: ParamKind::Gamma,
        points: ["[0:0:1]", "[0:1:0]", "[1:0:0]", "[1:1:1]", "([0:0:1], g)"],
        role_arcs: &[(4, 0)],
        role_line: None,
        oq: 2,
        q: 2,
        inverse: 30,
        table3: &[
            "[y + z : y - x : g*(y - x - z) - x + y + z]",
            "[x - y : x - g*y : (1 - g)*z - x + g*y]",
            "[x : y : z]",
        ],
        table4: None,
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 3],
            residuals: &[ResidualStep {
                role: 4,
                excluded: &[0, 1],
                action: ResidualAction::Param,
            }],
        },
    },
    TypeRecord {
        id: 30,
        formula: "[x*(x*y + g*x*z - x*z - g*y^2) : g*x*z*(x - y) : g*z*(x - y)*(x + y)]",
        param_kind: ParamKind::Gamma,
        points: ["[0:0:1]", "[0:1:0]", "[1:0:0]", "[g:1:0]", "[1:1:1]"],
        role_arcs: &[],
        role_line: Some([1, 2, 3]),
        oq: 2,
        q: 2,
        inverse: 29,
        table3: &[
            "[g^2*x + (1 - g)*y - z : g*(g*x - y) : g*((g + 1)*x - y)]",
            "[g*(y + z) - y : y + z : x + z]",
            "[z - x : y - x : x]",
        ],
        table4: None,
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 4],
            residuals: &[ResidualStep {
                role: 3,
                excluded: &[0, 1],
                action: ResidualAction::Param,
            }],
        },
    },
    TypeRecord {
        id: 31,
        formula: "[a*x*(-a*b*x*z + a*b*y^2 - b^2*x*y + b^2*x*z + a*x*y - a*y^2) : a*x*(-a*b*x*z + a*b*y*z + a*x*y - a*y*z - b*x*y + b*x*z) : -a^2*b*x^2*z + a^2*b*y^2*z + a^2*x^2*y - a^2*y^2*z - b^2*x^2*y + b^2*x^2*z]",
        param_kind: ParamKind::AB,
        points: ["[0:0:1]", "[0:1:0]", "[1:0:0]", "[1:1:1]", "[a:b:1]"],
        role_arcs: &[],
        role_line: None,
        oq: 2,
        q: 2,
        inverse: 31,
        table3: &[
            "[a*(a*(x + (b - 1)^2*z) + b*y) : a*(a*x + y) : b*y - ((b - 1)*z - x)*a^2 - (b*((1 - b)*z - x) - y)*a]",
            "[a*x - b*y : y - x : (b - 1)*a*x - b*(a - 1)*y + (a - b)*z]",
            "[x : y : z]",
        ],
        table4: None,
        plan: Plan::Anchors {
            anchors: &[0, 1, 2, 3],
            residuals: &[ResidualStep {
                role: 4,
                excluded: &[],
                action: ResidualAction::Param,
            }],
        },
    },
];

/// The 21 weighted proximity graphs of cubic maps, by table row (1-based).
pub static TABLE0: [&[(usize, usize)]; 21] = [
    &[(4, 3), (3, 2), (2, 1), (1, 0), (2, 0)],
    &[(4, 3), (2, 1), (1, 0), (2, 0)],
    &[(3, 2), (2, 1), (1, 0), (2, 0)],
    &[(4, 3), (3, 0), (2, 1), (1, 0)],
    &[(4, 3), (3, 2), (1, 0), (2, 0)],
    &[(4, 3), (3, 2), (2, 1), (1, 0)],
    &[(2, 1), (1, 0), (2, 0)],
    &[(3, 2), (1, 0), (2, 0)],
    &[(4, 3), (1, 0), (2, 0)],
    &[(3, 2), (2, 1), (1, 0)],
    &[(4, 3), (2, 1), (1, 0)],
    &[(4, 3), (3, 2), (1, 0)],
    &[(4, 3), (3, 2), (2, 1)],
    &[(1, 0), (2, 0)],
    &[(2, 1), (1, 0)],
    &[(4, 3), (1, 0)],
    &[(4, 3), (2, 1)],
    &[(4, 3), (3, 2)],
    &[(1, 0)],
    &[(4, 3)],
    &[],
];

pub fn table0_graph(row: usize) -> ProximityGraph {
    ProximityGraph::new(vec![2, 1, 1, 1, 1], TABLE0[row - 1])
}

/// Enriched graph of a catalog row (1-based), in role order.
pub fn table2_graph(row: usize) -> EnrichedGraph {
    let rec = &TYPES[row - 1];
    EnrichedGraph {
        graph: ProximityGraph::new(vec![2, 1, 1, 1, 1], rec.role_arcs),
        line: rec.role_line.map(|l| l.iter().copied().collect::<BTreeSet<_>>()),
    }
}

/// Classical decomposition scripts.
pub const RHO_DECOMP: &str = "[x:z-y:z] o sigma o [x:y+z:z] o sigma o [x:y-z:z]";
pub const TAU_DECOMP: &str = "[y-x:2y-x:x-y+z] o sigma o [x+z:x:y] o sigma o [-y:x-3y+z:x] o sigma o [x+z:x:y] o sigma o [y-x:-2x+z:2x-y]";
/// Corrected two-quadratic factorization of the type-7 map.
pub const TYPE7_DECOMP: &str = "[x:z:y] o rho o [y:x+y:z] o rho o [z:y:x]";

/// Orbit rules: parameter image and the witnessing automorphism, both as
/// texts over the type's parameter environment.
pub struct OrbitRule {
    pub param: &'static [&'static str],
    pub aut: &'static str,
}

pub static ORBIT_26: [OrbitRule; 2] = [
    OrbitRule { param: &["g"], aut: "[x : y : z]" },
    OrbitRule { param: &["g/(g-1)"], aut: "[y-x : y : y-z]" },
];

pub static ORBIT_27: [OrbitRule; 2] = [
    OrbitRule { param: &["g"], aut: "[x : y : z]" },
    OrbitRule { param: &["1/g"], aut: "[y : x : -z]" },
];

pub static ORBIT_28: [OrbitRule; 6] = [
    OrbitRule { param: &["g"], aut: "[x : y : z]" },
    OrbitRule { param: &["1-g"], aut: "[x : x-y : z]" },
    OrbitRule { param: &["1/g"], aut: "[y : x : z]" },
    OrbitRule { param: &["1/(1-g)"], aut: "[x-y : x : z]" },
    OrbitRule { param: &["g/(g-1)"], aut: "[x-y : -y : z]" },
    OrbitRule { param: &["(g-1)/g"], aut: "[y : y-x : z]" },
];

pub static ORBIT_29: [OrbitRule; 6] = [
    OrbitRule { param: &["g"], aut: "[x : y : z]" },
    OrbitRule { param: &["1-g"], aut: "[x : x-y : x-z]" },
    OrbitRule { param: &["1/g"], aut: "[y : x : z]" },
    OrbitRule { param: &["1/(1-g)"], aut: "[x-y : x : x-z]" },
    OrbitRule { param: &["g/(g-1)"], aut: "[y-x : y : y-z]" },
    OrbitRule { param: &["(g-1)/g"], aut: "[y : y-x : y-z]" },
];

pub static ORBIT_30: [OrbitRule; 6] = [
    OrbitRule { param: &["g"], aut: "[x : y : z]" },
    OrbitRule { param: &["1-g"], aut: "[(g-1)*x : g*y-x : (g-1)*z]" },
    OrbitRule { param: &["1/g"], aut: "[y : x : z]" },
    OrbitRule { param: &["1/(1-g)"], aut: "[g*y-x : (g-1)*x : (g-1)*z]" },
    OrbitRule { param: &["g/(g-1)"], aut: "[g*y-x : (g-1)*y : (g-1)*z]" },
    OrbitRule { param: &["(g-1)/g"], aut: "[(g-1)*y : g*y-x : (g-1)*z]" },
];

pub static ORBIT_31: [OrbitRule; 24] = [
    OrbitRule { param: &["a", "b"], aut: "[x : y : z]" },
    OrbitRule { param: &["b", "a"], aut: "[y : x : z]" },
    OrbitRule { param: &["1/a", "1/b"], aut: "[b*x : a*y : a*b*z]" },
    OrbitRule { param: &["1/b", "1/a"], aut: "[a*y : b*x : a*b*z]" },
    OrbitRule { param: &["a/(a-1)", "(a-b)/(a-1)"], aut: "[x : x-y : x-z]" },
    OrbitRule { param: &["(a-b)/(a-1)", "a/(a-1)"], aut: "[x-y : x : x-z]" },
    OrbitRule { param: &["(a-1)/a", "(a-1)/(a-b)"], aut: "[x/a : (x-y)/(a-b) : (x-z)/(a-1)]" },
    OrbitRule { param: &["(a-1)/(a-b)", "(a-1)/a"], aut: "[(x-y)/(a-b) : x/a : (x-z)/(a-1)]" },
    OrbitRule { param: &["b/(b-1)", "(b-a)/(b-1)"], aut: "[y : y-x : y-z]" },
    OrbitRule { param: &["(b-a)/(b-1)", "b/(b-1)"], aut: "[y-x : y : y-z]" },
    OrbitRule { param: &["(b-1)/b", "(b-1)/(b-a)"], aut: "[y/b : (x-y)/(a-b) : (y-z)/(b-1)]" },
    OrbitRule { param: &["(b-1)/(b-a)", "(b-1)/b"], aut: "[(x-y)/(a-b) : y/b : (y-z)/(b-1)]" },
    OrbitRule { param: &["(b-a)/(b*(1-a))", "1/(1-a)"], aut: "[b*x-a*y : b*x : b*(x-a*z)]" },
    OrbitRule { param: &["1/(1-a)", "(b-a)/(b*(1-a))"], aut: "[b*x : b*x-a*y : b*(x-a*z)]" },
    OrbitRule { param: &["b*(a-1)/(a-b)", "1-a"], aut: "[(a*y-b*x)/(a-b) : x : (a*z-x)/(a-1)]" },
    OrbitRule { param: &["1-a", "b*(a-1)/(a-b)"], aut: "[x : (a*y-b*x)/(a-b) : (a*z-x)/(a-1)]" },
    OrbitRule { param: &["(a-b)/(a*(1-b))", "1/(1-b)"], aut: "[a*y-b*x : a*y : a*(y-b*z)]" },
    OrbitRule { param: &["1/(1-b)", "(a-b)/(a*(1-b))"], aut: "[a*y : a*y-b*x : a*(y-b*z)]" },
    OrbitRule { param: &["a*(1-b)/(a-b)", "1-b"], aut: "[(a*y-b*x)/(a-b) : y : (b*z-y)/(b-1)]" },
    OrbitRule { param: &["1-b", "a*(1-b)/(a-b)"], aut: "[y : (a*y-b*x)/(a-b) : (b*z-y)/(b-1)]" },
    OrbitRule { param: &["(a-1)/(b-1)", "b*(a-1)/(a*(b-1))"], aut: "[y-x : (a*y-b*x)/a : (1-b)*x/(a-1) + (b-a)*z/(a-1) + y]" },
    OrbitRule { param: &["b*(a-1)/(a*(b-1))", "(a-1)/(b-1)"], aut: "[(a*y-b*x)/a : y-x : (1-b)*x/(a-1) + (b-a)*z/(a-1) + y]" },
    OrbitRule { param: &["(b-1)/(a-1)", "a*(b-1)/(b*(a-1))"], aut: "[y-x : (a*y-b*x)/b : (a-1)*y/(b-1) + (b-a)*z/(b-1) - x]" },
    OrbitRule { param: &["a*(b-1)/(b*(a-1))", "(b-1)/(a-1)"], aut: "[(a*y-b*x)/b : y-x : (a-1)*y/(b-1) + (b-a)*z/(b-1) - x]" },
];

/// The six base pairs whose images under coordinate swaps and inversion make
/// up the full two-parameter orbit.
pub static AB_ORBIT_CORE: [[&str; 2]; 6] = [
    ["a", "b"],
    ["a/(a-1)", "(a-b)/(a-1)"],
    ["b/(b-1)", "(b-a)/(b-1)"],
    ["(a-b)/(b*(a-1))", "1/(1-a)"],
    ["(b-a)/(a*(b-1))", "1/(1-b)"],
    ["(a-1)/(b-1)", "b*(a-1)/(a*(b-1))"],
];

pub fn record(id: usize) -> &'static TypeRecord {
    &TYPES[id - 1]
}

pub fn param_env(kind: ParamKind) -> ParamEnv {
    match kind {
        ParamKind::None => ParamEnv::new(),
        ParamKind::Gamma => ParamEnv::gamma(),
        ParamKind::AB => ParamEnv::ab(),
    }
}

/// Symbolic catalog formula of a type.
pub fn formula(id: usize) -> CremonaMap {
    let rec = record(id);
    parse_map(rec.formula, &param_env(rec.param_kind)).expect("catalog formula parses")
}

/// Canonical base points of a type, symbolically.
pub fn canonical_points(id: usize) -> Vec<BubblePoint> {
    let rec = record(id);
    let env = param_env(rec.param_kind);
    rec.points
        .iter()
        .map(|t| parse_point(t, &env).expect("catalog point parses"))
        .collect()
}

/// Substitute concrete parameter values into a symbolic map.
pub fn instantiate_map(map: &CremonaMap, values: &[Scalar; 2]) -> Result<CremonaMap> {
    let comps = map.components();
    let inst = |f: &crate::hompoly::HomPoly| -> Result<crate::hompoly::HomPoly> {
        let mut form = crate::hompoly::Form::zero();
        for (e, c) in &f.form().terms {
            let c2 = crate::scalar::subst_params(c, values)?;
            form = form.add(&crate::hompoly::Form::monomial(*e, c2));
        }
        crate::hompoly::HomPoly::from_form(form)
    };
    CremonaMap::from_components(inst(&comps[0])?, inst(&comps[1])?, inst(&comps[2])?)
}

/// Substitute concrete parameter values into a symbolic bubble point.
pub fn instantiate_point(p: &BubblePoint, values: &[Scalar; 2]) -> Result<BubblePoint> {
    use crate::bubble::Tail;
    use crate::proj::ProjPoint;
    let coords = p.base.coords();
    let base = ProjPoint::new([
        crate::scalar::subst_params(&coords[0], values)?,
        crate::scalar::subst_params(&coords[1], values)?,
        crate::scalar::subst_params(&coords[2], values)?,
    ])?;
    let mut tail = Vec::new();
    for t in &p.tail {
        tail.push(match t {
            Tail::Value(s) => Tail::Value(crate::scalar::subst_params(s, values)?),
            Tail::Inf => Tail::Inf,
        });
    }
    Ok(BubblePoint { base, tail })
}

/// Lazily parsed role graphs for classification lookups.
pub fn role_graph_forms() -> &'static Vec<(usize, crate::graph::CanonicalForm)> {
    static FORMS: OnceLock<Vec<(usize, crate::graph::CanonicalForm)>> = OnceLock::new();
    FORMS.get_or_init(|| {
        (1..=31)
            .map(|id| (id, table2_graph(id).canonical_form()))
            .collect()
    })
}
