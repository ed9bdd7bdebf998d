//! Quaternion-algebra invariants of the doubled surfaces: Hilbert pairs,
//! ramification sets, and the finite trace checks certifying that every
//! classified double is arithmetic with invariant trace field ℚ.

use crate::exact::{
    candidate_places, hilbert_symbol, int, is_integer, rat_str, rational_sqrt, squarefree_part,
    Int, Place, Rat,
};
use crate::geometry::OrthoTriple;
use crate::orbit::{
    boundary_reflections, pants_generators, torus_generators, trace_sl_square, Mat3, SurfaceKind,
};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ArithmeticError {
    #[error("quaternion algebra needs integer cosh-lengths, got {0}")]
    NonIntegralTriple(String),
    #[error("word {word:?} has tr+1 = {value} < 0; not in the identity component")]
    NegativeTraceSquare { word: String, value: String },
}

/// Quaternion algebra over ℚ as a Hilbert-symbol pair, stored with
/// squarefree entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatAlgQ {
    x: Int,
    y: Int,
}

impl QuatAlgQ {
    /// Canonicalize a Hilbert pair to squarefree parts (signs kept).
    pub fn new(x: Int, y: Int) -> Self {
        assert!(!x.is_zero() && !y.is_zero());
        QuatAlgQ {
            x: squarefree_part(&x),
            y: squarefree_part(&y),
        }
    }

    pub fn x(&self) -> &Int {
        &self.x
    }
    pub fn y(&self) -> &Int {
        &self.y
    }
}

impl std::fmt::Display for QuatAlgQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Sorted set of ramified places.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamSet {
    places: Vec<Place>,
}

impl RamSet {
    pub fn places(&self) -> &[Place] {
        &self.places
    }

    /// The finite primes, in increasing order.
    pub fn finite_primes(&self) -> Vec<Int> {
        self.places
            .iter()
            .filter_map(|p| match p {
                Place::Finite(q) => Some(q.clone()),
                Place::Infinite => None,
            })
            .collect()
    }

    pub fn contains_infinite(&self) -> bool {
        self.places.contains(&Place::Infinite)
    }
}

impl std::fmt::Display for RamSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.places.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Raw Hilbert pair `(b²−1, a²+b²+c²+2abc−1)` of the invariant quaternion
/// algebra of the doubled surface.
pub fn invariant_quaternion_algebra_raw(t: &OrthoTriple) -> Result<(Int, Int), ArithmeticError> {
    if !t.is_integral() {
        return Err(ArithmeticError::NonIntegralTriple(t.to_string()));
    }
    let (a, b, c) = (
        t.a().numer().clone(),
        t.b().numer().clone(),
        t.c().numer().clone(),
    );
    let x = &b * &b - 1;
    let y = &a * &a + &b * &b + &c * &c + int(2) * &a * &b * &c - 1;
    Ok((x, y))
}

/// The invariant quaternion algebra, canonicalized to squarefree parts.
pub fn invariant_quaternion_algebra(t: &OrthoTriple) -> Result<QuatAlgQ, ArithmeticError> {
    let (x, y) = invariant_quaternion_algebra_raw(t)?;
    Ok(QuatAlgQ::new(x, y))
}

/// Places where the algebra is a division algebra: Hilbert symbol −1,
/// scanned over ∞ and the primes dividing `2xy`.
pub fn ramification_set(alg: &QuatAlgQ) -> RamSet {
    let mut places: Vec<Place> = candidate_places(&alg.x, &alg.y)
        .into_iter()
        .filter(|v| hilbert_symbol(&alg.x, &alg.y, v) == -1)
        .collect();
    places.sort();
    RamSet { places }
}

/// The ramification set classifies quaternion algebras over ℚ.
pub fn algebras_isomorphic(u: &QuatAlgQ, v: &QuatAlgQ) -> bool {
    ramification_set(u) == ramification_set(v)
}

/// The four-generator Fuchsian group of a doubled pants or torus.
#[derive(Debug, Clone)]
pub struct DoubleGroup {
    pub kind: SurfaceKind,
    pub triple: OrthoTriple,
    /// generators (w, x, y, z)
    pub gens: [Mat3; 4],
}

/// Generators of the genus-2 double: for the pants
/// `⟨f_αf_β, f_αf_γ, r_αr_β, r_αr_γ⟩`; for the torus
/// `⟨g_αg_β, g_αg_γ, r_αg_αg_βr_α, r_αg_αg_γr_α⟩`.
pub fn double_group(t: &OrthoTriple, kind: SurfaceKind) -> DoubleGroup {
    let [ra, rb, rg] = boundary_reflections(t);
    let gens = match kind {
        SurfaceKind::Pants => {
            let [fa, fb, fg] = pants_generators(t);
            [fa.mul(&fb), fa.mul(&fg), ra.mul(&rb), ra.mul(&rg)]
        }
        SurfaceKind::Torus => {
            let [ga, gb, gg] = torus_generators(t);
            let w = ga.mul(&gb);
            let x = ga.mul(&gg);
            let y = ra.mul(&w).mul(&ra);
            let z = ra.mul(&x).mul(&ra);
            [w, x, y, z]
        }
    };
    DoubleGroup {
        kind,
        triple: t.clone(),
        gens,
    }
}

const WORD_NAMES: [&str; 15] = [
    "w", "x", "y", "z", "wx", "wy", "wz", "xy", "xz", "yz", "wxy", "wxz", "wyz", "xyz", "wxyz",
];

fn word_matrix(g: &DoubleGroup, name: &str) -> Mat3 {
    let mut m = Mat3::identity();
    for ch in name.chars() {
        let idx = match ch {
            'w' => 0,
            'x' => 1,
            'y' => 2,
            'z' => 3,
            _ => unreachable!(),
        };
        m = m.mul(&g.gens[idx]);
    }
    m
}

/// The fifteen products whose trace integrality certifies integrality of
/// the whole trace set of a four-generator group.
pub fn takeuchi_word_set(g: &DoubleGroup) -> Vec<Mat3> {
    WORD_NAMES.iter().map(|name| word_matrix(g, name)).collect()
}

/// Per-word outcome of a trace check.
#[derive(Debug, Clone)]
pub struct TraceCheckItem {
    pub word: String,
    /// tr + 1, the squared SL₂-trace
    pub trace_sq: Rat,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct TraceCheckReport {
    pub items: Vec<TraceCheckItem>,
    pub pass: bool,
}

/// Trace integrality over the fifteen certificate words: each squared
/// trace must be a nonnegative rational integer.
pub fn integrality_check(g: &DoubleGroup) -> TraceCheckReport {
    let mut items = Vec::with_capacity(15);
    for name in WORD_NAMES {
        let trace_sq = trace_sl_square(&word_matrix(g, name));
        let ok = is_integer(&trace_sq) && !trace_sq.is_negative();
        items.push(TraceCheckItem {
            word: name.to_string(),
            trace_sq,
            ok,
        });
    }
    let pass = items.iter().all(|i| i.ok);
    TraceCheckReport { items, pass }
}

const SQUARE_WORD_NAMES: [&str; 14] = [
    "ww", "xx", "yy", "zz", "wwxx", "wwyy", "wwzz", "xxyy", "xxzz", "yyzz", "wwxxyy", "wwxxzz",
    "wwyyzz", "xxyyzz",
];

/// Invariant-trace-field certificate: the fourteen square-words must have
/// rational SL₂-trace, i.e. their squared traces must be rational squares.
pub fn trace_field_check(g: &DoubleGroup) -> TraceCheckReport {
    let mut items = Vec::with_capacity(14);
    for name in SQUARE_WORD_NAMES {
        let trace_sq = trace_sl_square(&word_matrix(g, name));
        let ok = !trace_sq.is_negative() && rational_sqrt(&trace_sq).is_some();
        items.push(TraceCheckItem {
            word: name.to_string(),
            trace_sq,
            ok,
        });
    }
    let pass = items.iter().all(|i| i.ok);
    TraceCheckReport { items, pass }
}

/// Squarefree parts of the squared traces over all words of length ≤
/// `max_len` in the four generators. The trace set then lies in
/// `ℤ + Σ ℤ·√d` over the observed `d`.
pub fn trace_ring_sample(
    g: &DoubleGroup,
    max_len: usize,
) -> Result<BTreeSet<Int>, ArithmeticError> {
    assert!(max_len >= 1);
    let mut observed = BTreeSet::new();
    let mut frontier: Vec<(Mat3, String)> = vec![(Mat3::identity(), String::new())];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * 4);
        for (m, word) in &frontier {
            for (idx, name) in ["w", "x", "y", "z"].iter().enumerate() {
                let prod = m.mul(&g.gens[idx]);
                let mut w = word.clone();
                w.push_str(name);
                let tsq = trace_sl_square(&prod);
                if tsq.is_negative() {
                    return Err(ArithmeticError::NegativeTraceSquare {
                        word: w,
                        value: rat_str(&tsq),
                    });
                }
                if is_integer(&tsq) && !tsq.is_zero() {
                    observed.insert(squarefree_part(tsq.numer()));
                }
                next.push((prod, w));
            }
        }
        frontier = next;
    }
    Ok(observed)
}

/// Multiplicative span of ring generators in ℚ*/ℚ*²: the squarefree parts
/// reachable as products of a subset of `gens`.
pub fn square_class_span(gens: &[u64]) -> BTreeSet<Int> {
    let mut span = BTreeSet::new();
    for mask in 0u32..(1 << gens.len()) {
        let mut prod = Int::one();
        for (i, g) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod *= int(*g as i64);
            }
        }
        span.insert(squarefree_part(&prod));
    }
    span
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::orbit::{gram_matrix, preserves_form};

    fn t(a: u64, b: u64, c: u64) -> OrthoTriple {
        OrthoTriple::from_ints(a, b, c)
    }

    fn alg(x: i64, y: i64) -> QuatAlgQ {
        QuatAlgQ::new(int(x), int(y))
    }

    #[test]
    fn algebra_examples() {
        let (x, y) = invariant_quaternion_algebra_raw(&t(2, 2, 2)).unwrap();
        assert_eq!((x, y), (int(3), int(27)));
        assert_eq!(
            invariant_quaternion_algebra(&t(2, 2, 2)).unwrap(),
            alg(3, 3)
        );

        let (x, y) = invariant_quaternion_algebra_raw(&t(3, 3, 3)).unwrap();
        assert_eq!((x, y), (int(8), int(80)));
        assert_eq!(
            invariant_quaternion_algebra(&t(3, 3, 3)).unwrap(),
            alg(2, 5)
        );

        let (x, y) = invariant_quaternion_algebra_raw(&t(2, 2, 3)).unwrap();
        assert_eq!((x, y), (int(3), int(40)));
        assert_eq!(
            invariant_quaternion_algebra(&t(2, 2, 3)).unwrap(),
            alg(3, 10)
        );

        let frac = OrthoTriple::new(rat(3, 2), rat(3, 2), rat(3, 2)).unwrap();
        assert!(invariant_quaternion_algebra(&frac).is_err());
    }

    fn primes(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&p| int(p)).collect()
    }

    #[test]
    fn ramification_examples() {
        assert_eq!(
            ramification_set(&alg(3, 3)).finite_primes(),
            primes(&[2, 3])
        );
        assert_eq!(
            ramification_set(&alg(2, 5)).finite_primes(),
            primes(&[2, 5])
        );
        for y in [3i64, 7, 30] {
            assert!(ramification_set(&alg(1, y)).places().is_empty());
        }
        assert!(!ramification_set(&alg(3, 3)).contains_infinite());
    }

    #[test]
    fn isomorphism_examples() {
        assert!(algebras_isomorphic(
            &QuatAlgQ::new(int(3), int(27)),
            &alg(3, 3)
        ));
        assert!(algebras_isomorphic(
            &QuatAlgQ::new(int(3), int(72)),
            &alg(2, 6)
        ));
        assert!(!algebras_isomorphic(&alg(3, 3), &alg(2, 5)));
    }

    #[test]
    fn same_torus_same_algebra_across_bases() {
        // (6,29,36) and its flip (6,36,64) describe one torus
        let a1 = invariant_quaternion_algebra(&t(6, 29, 36)).unwrap();
        let a2 = invariant_quaternion_algebra(&t(6, 36, 64)).unwrap();
        assert!(algebras_isomorphic(&a1, &a2));
        assert_eq!(ramification_set(&a1).finite_primes(), primes(&[2, 3, 5, 7]));
    }

    #[test]
    fn double_group_structure() {
        for kind in [SurfaceKind::Pants, SurfaceKind::Torus] {
            let tr = t(2, 2, 2);
            let g = double_group(&tr, kind);
            let q = gram_matrix(&tr);
            for m in &g.gens {
                assert!(preserves_form(m, &q));
                assert_eq!(m.det(), crate::exact::rat_int(1));
            }
        }
        // torus fourth generator is r_α g_α g_γ r_α
        let tr = t(2, 2, 2);
        let g = double_group(&tr, SurfaceKind::Torus);
        let [ga, _, gg] = torus_generators(&tr);
        let [ra, _, _] = boundary_reflections(&tr);
        assert_eq!(g.gens[3], ra.mul(&ga).mul(&gg).mul(&ra));
    }

    #[test]
    fn word_set_shape() {
        let g = double_group(&t(2, 2, 2), SurfaceKind::Pants);
        let words = takeuchi_word_set(&g);
        assert_eq!(words.len(), 15);
        assert_eq!(words[0], g.gens[0]);
        let wxyz = g.gens[0].mul(&g.gens[1]).mul(&g.gens[2]).mul(&g.gens[3]);
        assert_eq!(words[14], wxyz);
    }

    #[test]
    fn integrality_examples() {
        assert!(integrality_check(&double_group(&t(2, 2, 2), SurfaceKind::Pants)).pass);
        assert!(integrality_check(&double_group(&t(19, 21, 21), SurfaceKind::Torus)).pass);
        // P(3/2,3/2,3/2) doubles to a group with integer generators, so its
        // trace set is integral even though the surface is only 2-AOI
        let half = OrthoTriple::new(rat(3, 2), rat(3, 2), rat(3, 2)).unwrap();
        assert!(integrality_check(&double_group(&half, SurfaceKind::Pants)).pass);
        // P(5/3,5/3,5/3) fails: tr(r_α r_β) + 1 = 4c² = 100/9 is not an integer
        let third = OrthoTriple::new(rat(5, 3), rat(5, 3), rat(5, 3)).unwrap();
        let rep = integrality_check(&double_group(&third, SurfaceKind::Pants));
        assert!(!rep.pass);
        let y = rep.items.iter().find(|i| i.word == "y").unwrap();
        assert_eq!(y.trace_sq, rat(100, 9));
    }

    #[test]
    fn trace_field_examples() {
        assert!(trace_field_check(&double_group(&t(2, 2, 2), SurfaceKind::Pants)).pass);
        assert!(trace_field_check(&double_group(&t(10, 10, 17), SurfaceKind::Torus)).pass);
    }

    #[test]
    fn square_word_trace_identity() {
        // tr(m²) + 1 = (tr(m) − 1)² for every generator and pair product
        for kind in [SurfaceKind::Pants, SurfaceKind::Torus] {
            let g = double_group(&t(3, 5, 9), kind);
            for name in ["w", "x", "y", "z", "wx", "yz"] {
                let m = word_matrix(&g, name);
                let direct = trace_sl_square(&m.mul(&m));
                let shifted = {
                    let v = m.trace() - Rat::one();
                    &v * &v
                };
                assert_eq!(direct, shifted);
            }
        }
    }

    #[test]
    fn trace_ring_examples() {
        let ring =
            |a, b, c, kind, len| trace_ring_sample(&double_group(&t(a, b, c), kind), len).unwrap();
        let z: BTreeSet<Int> = [int(1)].into_iter().collect();
        assert_eq!(ring(2, 2, 2, SurfaceKind::Pants, 4), z);
        assert!(ring(2, 2, 5, SurfaceKind::Pants, 4).is_subset(&square_class_span(&[2])));
        assert!(ring(2, 3, 6, SurfaceKind::Torus, 4).is_subset(&square_class_span(&[2, 5])));
    }

    #[test]
    fn span_contains_products() {
        let span = square_class_span(&[6, 14]);
        let expect: BTreeSet<Int> = [1i64, 6, 14, 21].into_iter().map(int).collect();
        assert_eq!(span, expect);
    }

    #[test]
    fn every_computed_algebra_satisfies_reciprocity() {
        // even number of ramified places (counting the real one) for all
        // classified surfaces
        let mut triples: Vec<OrthoTriple> = crate::classify::classify_oi_pants()
            .iter()
            .map(|r| r.triple())
            .collect();
        triples.extend(
            crate::classify::classify_oi_tori()
                .iter()
                .map(|r| r.triple()),
        );
        for tri in &triples {
            let ram = ramification_set(&invariant_quaternion_algebra(tri).unwrap());
            assert_eq!(ram.places().len() % 2, 0, "odd ramification for {tri}");
            assert!(!ram.contains_infinite(), "real ramification for {tri}");
        }
    }
}
