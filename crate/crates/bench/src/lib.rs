//! Benchmark fixtures.

use gcnlab_core::gen::{generate, GeneratorKind, GeneratorSpec};
use gcnlab_core::geom::{int, Line};
use gcnlab_core::{NodeSet, Poly};

/// A certified set of the given kind and degree, fixed seed.
pub fn nodeset(kind: GeneratorKind, degree: usize) -> NodeSet {
    generate(&GeneratorSpec::new(kind, degree, 42)).expect("fixture generates").nodeset
}

/// A product of `degree` lines together with one of its factors.
pub fn line_product(degree: usize) -> (Poly, Line) {
    let lines: Vec<Line> = (1..=degree as i64)
        .map(|k| Line::from_ints(k, 2 * k + 1, -(k * k)).unwrap())
        .collect();
    let p = lines.iter().fold(Poly::constant(int(3)), |acc, l| acc.multiply_line(l));
    (p, lines[degree / 2].clone())
}
