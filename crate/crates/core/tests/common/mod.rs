//! Ideals shared by the integration tests.

#![allow(dead_code)]

use cohsupp::MonomialSeq;

/// Small ideals covering cycles, paths, regular sequences, non-squarefree
/// generators and a non-gradable diagram.
pub const CORPUS: &[&str] = &[
    "x1*x2,x2*x3,x3*x4,x4*x5,x5*x6,x6*x1",
    "x1*x2,x2*x3,x3*x4,x4*x5,x5*x1",
    "x1*x2,x2*x3,x3*x4,x4*x5",
    "x1*x2,x2*x3,x3*x4,x4*x5,x5*x6,x6*x7",
    "x1^2,x2^2",
    "x1^2,x2^2,x3^2",
    "x1*x2,x3*x4,x5*x6,x1*x3*x5,x2*x4*x6",
    "x1^2*x2,x2^2,x1*x3,x3^2*x2",
    "x1*x2,x1*x3,x2*x3",
    "x1*x2*x3,x3*x4*x5,x5*x6*x1,x2*x4*x6",
    "x1^2*x2,x2^2*x3,x3^2*x1",
    "x1*x2,x2*x3,x3*x4,x4*x1,x1*x3",
];

pub fn corpus() -> Vec<MonomialSeq> {
    CORPUS.iter().map(|s| s.parse().unwrap()).collect()
}
