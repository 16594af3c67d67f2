//! Fixed inputs shared by the benchmarks.

use tietze_core::{parse_elem, parse_matrix, DiffOp, FieldElem, Mat2};

pub const QAIRY: &str = "[[-q*t,1],[1,0]]";

pub fn qairy_matrix() -> Mat2 {
    parse_matrix(QAIRY).expect("q-Airy matrix parses")
}

pub fn qairy_r() -> FieldElem {
    parse_elem("1/(q^3*t^2)").expect("r parses")
}

/// Matrices of growing size for normalization, one per operator.
pub fn normalize_inputs() -> Vec<(&'static str, DiffOp, Mat2)> {
    let m = |s: &str| parse_matrix(s).expect("bench matrix parses");
    vec![
        ("qdilation/qairy", DiffOp::QDilation, qairy_matrix()),
        (
            "qdilation/dense",
            DiffOp::QDilation,
            m("[[t^2+q,q*t-1],[t+1,t^2-q*t]]"),
        ),
        (
            "shift/f3",
            DiffOp::parse("shift:1").unwrap(),
            m("[[0,t],[1,0]]"),
        ),
        ("mahler2/dense", DiffOp::Mahler(2), m("[[t+1,q],[t-q,t^2]]")),
    ]
}
