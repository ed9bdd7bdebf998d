//! The quadratic form attached to a right-angled hexagon, the matrix
//! groups acting on it, and the breadth-first enumeration of ortho
//! cosh-length spectra as group orbits.
//!
//! All matrices act on column vectors over exact rationals. Spectrum
//! entries are indexed by words over the letters `a`/`b`/`g`: the first
//! letter selects the seed vector `u_*` and every letter applies the
//! matching flip generator, so a word reads as the cutting sequence of
//! the orthogeodesic it names.

use crate::exact::{is_integer, rat_int, rat_str, Int, Rat};
use crate::geometry::{trace_sq_to_length, OrthoTriple};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OrbitError {
    #[error("cutoff must exceed 1, got {0}")]
    CutoffTooSmall(String),
    #[error("vector is not space-like: B(u,u) = {0}")]
    NotSpaceLike(String),
    #[error(
        "orbit value dips outlasted the safety margin near word {word:?} (value {value}, \
         {run} consecutive values over the cutoff, window {window}); enumeration aborted \
         rather than silently truncated — re-run with a larger window"
    )]
    DipBudgetExceeded {
        word: String,
        value: String,
        run: usize,
        window: usize,
    },
    #[error("spectrum word {0:?} is not reduced or uses letters outside a/b/g")]
    BadWord(String),
}

/// 3×3 matrix over exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat3 {
    rows: [[Rat; 3]; 3],
}

/// Column vector over exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec3(pub [Rat; 3]);

impl Mat3 {
    pub fn from_rows(rows: [[Rat; 3]; 3]) -> Self {
        Mat3 { rows }
    }

    pub fn identity() -> Self {
        let mut rows: [[Rat; 3]; 3] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Rat::one();
        }
        Mat3 { rows }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn mul(&self, rhs: &Mat3) -> Mat3 {
        let mut rows: [[Rat; 3]; 3] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                let mut acc = Rat::zero();
                for (k, r) in rhs.rows.iter().enumerate() {
                    acc += &self.rows[i][k] * &r[j];
                }
                *out = acc;
            }
        }
        Mat3 { rows }
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        let mut out: [Rat; 3] = Default::default();
        for (i, row) in self.rows.iter().enumerate() {
            out[i] = row.iter().zip(&v.0).map(|(m, x)| m * x).sum();
        }
        Vec3(out)
    }

    pub fn transpose(&self) -> Mat3 {
        let mut rows: [[Rat; 3]; 3] = Default::default();
        for i in 0..3 {
            for (j, row) in self.rows.iter().enumerate() {
                rows[i][j] = row[i].clone();
            }
        }
        Mat3 { rows }
    }

    pub fn trace(&self) -> Rat {
        &self.rows[0][0] + &self.rows[1][1] + &self.rows[2][2]
    }

    pub fn det(&self) -> Rat {
        let m = &self.rows;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat3::identity()
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().flatten().all(is_integer)
    }
}

impl Vec3 {
    pub fn entry(&self, i: usize) -> &Rat {
        &self.0[i]
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(is_integer)
    }
}

/// Gram matrix of the hexagon quadratic form; symmetric of signature (2,1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QForm {
    gram: Mat3,
}

impl QForm {
    pub fn gram(&self) -> &Mat3 {
        &self.gram
    }

    pub fn bilinear(&self, u: &Vec3, v: &Vec3) -> Rat {
        let gv = self.gram.mul_vec(v);
        u.0.iter().zip(&gv.0).map(|(x, y)| x * y).sum()
    }

    pub fn eval(&self, u: &Vec3) -> Rat {
        self.bilinear(u, u)
    }
}

/// Gram matrix of `q(x,y,z) = (a²−1)x² + (b²−1)y² + (c²−1)z²
/// − 2(ab+c)xy − 2(bc+a)yz − 2(ca+b)zx`.
pub fn gram_matrix(t: &OrthoTriple) -> QForm {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let one = Rat::one();
    let ab = -(a * b + c);
    let bc = -(b * c + a);
    let ca = -(c * a + b);
    QForm {
        gram: Mat3::from_rows([
            [a * a - &one, ab.clone(), ca.clone()],
            [ab, b * b - &one, bc.clone()],
            [ca, bc, c * c - &one],
        ]),
    }
}

/// The distinguished vectors of the hexagon form: the standard basis
/// `e_i`, the arc-geodesic normals `u_*`, and the hexagon vertices
/// `v_*`, `w_*`.
#[derive(Debug, Clone)]
pub struct HexagonVectors {
    pub e: [Vec3; 3],
    pub u: [Vec3; 3],
    pub v: [Vec3; 3],
    pub w: [Vec3; 3],
}

pub fn special_vectors(t: &OrthoTriple) -> HexagonVectors {
    let (a, b, c) = (t.a().clone(), t.b().clone(), t.c().clone());
    let one = Rat::one();
    let neg = |x: &Rat| -x.clone();
    let vec = |x: Rat, y: Rat, z: Rat| Vec3([x, y, z]);
    HexagonVectors {
        e: [
            vec(Rat::one(), Rat::zero(), Rat::zero()),
            vec(Rat::zero(), Rat::one(), Rat::zero()),
            vec(Rat::zero(), Rat::zero(), Rat::one()),
        ],
        u: [
            vec(neg(&one), c.clone(), b.clone()),
            vec(c.clone(), neg(&one), a.clone()),
            vec(b.clone(), a.clone(), neg(&one)),
        ],
        v: [
            vec(Rat::zero(), &c * &c - &one, &b * &c + &a),
            vec(&c * &a + &b, Rat::zero(), &a * &a - &one),
            vec(&b * &b - &one, &a * &b + &c, Rat::zero()),
        ],
        w: [
            vec(Rat::zero(), &b * &c + &a, &b * &b - &one),
            vec(&c * &c - &one, Rat::zero(), &c * &a + &b),
            vec(&a * &b + &c, &a * &a - &one, Rat::zero()),
        ],
    }
}

/// Reflections across the three arc geodesics of the hexagon; generators
/// of the pants group.
pub fn pants_generators(t: &OrthoTriple) -> [Mat3; 3] {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let one = Rat::one();
    let two = rat_int(2);
    let fa = {
        let d = a * a - &one;
        Mat3::from_rows([
            [
                -Rat::one(),
                &two * (a * b + c) / &d,
                &two * (a * c + b) / &d,
            ],
            [Rat::zero(), Rat::one(), Rat::zero()],
            [Rat::zero(), Rat::zero(), Rat::one()],
        ])
    };
    let fb = {
        let d = b * b - &one;
        Mat3::from_rows([
            [Rat::one(), Rat::zero(), Rat::zero()],
            [
                &two * (b * a + c) / &d,
                -Rat::one(),
                &two * (b * c + a) / &d,
            ],
            [Rat::zero(), Rat::zero(), Rat::one()],
        ])
    };
    let fg = {
        let d = c * c - &one;
        Mat3::from_rows([
            [Rat::one(), Rat::zero(), Rat::zero()],
            [Rat::zero(), Rat::one(), Rat::zero()],
            [
                &two * (c * a + b) / &d,
                &two * (c * b + a) / &d,
                -Rat::one(),
            ],
        ])
    };
    [fa, fb, fg]
}

/// Order-two rotations about the arc midpoints; generators of the
/// one-holed-torus group. Each has determinant 1.
pub fn torus_generators(t: &OrthoTriple) -> [Mat3; 3] {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let one = Rat::one();
    let ga = {
        let q = (b + c) / (a - &one);
        Mat3::from_rows([
            [-Rat::one(), q.clone(), q],
            [Rat::zero(), Rat::zero(), Rat::one()],
            [Rat::zero(), Rat::one(), Rat::zero()],
        ])
    };
    let gb = {
        let q = (c + a) / (b - &one);
        Mat3::from_rows([
            [Rat::zero(), Rat::zero(), Rat::one()],
            [q.clone(), -Rat::one(), q],
            [Rat::one(), Rat::zero(), Rat::zero()],
        ])
    };
    let gg = {
        let q = (a + b) / (c - &one);
        Mat3::from_rows([
            [Rat::zero(), Rat::one(), Rat::zero()],
            [Rat::one(), Rat::zero(), Rat::zero()],
            [q.clone(), q, -Rat::one()],
        ])
    };
    [ga, gb, gg]
}

/// Reflections across the boundary sides of the hexagon.
pub fn boundary_reflections(t: &OrthoTriple) -> [Mat3; 3] {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let two = rat_int(2);
    let ra = Mat3::from_rows([
        [-Rat::one(), Rat::zero(), Rat::zero()],
        [&two * c, Rat::one(), Rat::zero()],
        [&two * b, Rat::zero(), Rat::one()],
    ]);
    let rb = Mat3::from_rows([
        [Rat::one(), &two * c, Rat::zero()],
        [Rat::zero(), -Rat::one(), Rat::zero()],
        [Rat::zero(), &two * a, Rat::one()],
    ]);
    let rg = Mat3::from_rows([
        [Rat::one(), Rat::zero(), &two * b],
        [Rat::zero(), Rat::one(), &two * a],
        [Rat::zero(), Rat::zero(), -Rat::one()],
    ]);
    [ra, rb, rg]
}

/// Exact test of `mᵀ Q m = Q`.
pub fn preserves_form(m: &Mat3, q: &QForm) -> bool {
    &m.transpose().mul(q.gram()).mul(m) == q.gram()
}

/// `B(u₁,u₂)² / (B(u₁,u₁)·B(u₂,u₂))`, the exact square of the cosh of
/// the distance between the geodesics dual to two space-like vectors.
pub fn cosh_distance_sq(u1: &Vec3, u2: &Vec3, q: &QForm) -> Result<Rat, OrbitError> {
    let n1 = q.eval(u1);
    let n2 = q.eval(u2);
    for n in [&n1, &n2] {
        if !n.is_positive() {
            return Err(OrbitError::NotSpaceLike(rat_str(n)));
        }
    }
    let b = q.bilinear(u1, u2);
    Ok(&b * &b / (n1 * n2))
}

/// `tr_SO + 1`, which equals the squared SL₂-trace of the isometry the
/// matrix represents. Meaningful for orientation-preserving words; this
/// just computes the trace shift.
pub fn trace_sl_square(m: &Mat3) -> Rat {
    m.trace() + Rat::one()
}

/// Which surface a spectrum belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Pants,
    Torus,
}

impl SurfaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SurfaceKind::Pants => "pants",
            SurfaceKind::Torus => "torus",
        }
    }
}

/// One of the three orthobasis arcs, doubling as a generator letter and,
/// for the pants, as a boundary label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcLabel {
    Alpha,
    Beta,
    Gamma,
}

pub const ARCS: [ArcLabel; 3] = [ArcLabel::Alpha, ArcLabel::Beta, ArcLabel::Gamma];

impl ArcLabel {
    pub fn idx(self) -> usize {
        match self {
            ArcLabel::Alpha => 0,
            ArcLabel::Beta => 1,
            ArcLabel::Gamma => 2,
        }
    }

    pub fn letter(self) -> char {
        match self {
            ArcLabel::Alpha => 'a',
            ArcLabel::Beta => 'b',
            ArcLabel::Gamma => 'g',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'a' => Some(ArcLabel::Alpha),
            'b' => Some(ArcLabel::Beta),
            'g' => Some(ArcLabel::Gamma),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ArcLabel::Alpha => "alpha",
            ArcLabel::Beta => "beta",
            ArcLabel::Gamma => "gamma",
        }
    }
}

/// Which trees to enumerate: a single boundary's tree or all three.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartSel {
    One(ArcLabel),
    All,
}

impl StartSel {
    pub fn label(self) -> &'static str {
        match self {
            StartSel::One(l) => l.name(),
            StartSel::All => "all",
        }
    }
}

/// A distinct cosh-length with its multiplicity and one witness word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub cosh_length: Rat,
    pub multiplicity: usize,
    pub witness_word: String,
}

/// Ortho cosh-length spectrum below a cutoff, sorted strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub surface_kind: SurfaceKind,
    pub triple: OrthoTriple,
    pub boundary: StartSel,
    pub cutoff: Rat,
    pub entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn min_entry(&self) -> Option<&Rat> {
        self.entries.first().map(|e| &e.cosh_length)
    }

    pub fn all_integral(&self) -> bool {
        self.entries.iter().all(|e| is_integer(&e.cosh_length))
    }
}

struct TreeNode {
    vec: Vec3,
    word: u32,
    last: ArcLabel,
    /// consecutive values above the cutoff ending at this node
    over_run: usize,
}

/// Default pruning window. The deepest dip observed across the
/// classified triples and adversarially skewed rational ones is 3; the
/// walk aborts (and the caller retries with a doubled window) whenever a
/// dip reaches the upper half of the window, so a silently truncating
/// window would first announce itself.
pub const DEFAULT_PRUNE_WINDOW: usize = 6;

const MAX_PRUNE_WINDOW: usize = 48;

// Exact fraction on i128 for the enumeration hot path; any overflow
// falls back to the BigRational walk.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Frac {
    n: i128,
    d: i128,
}

fn gcd128(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

impl Frac {
    fn from_rat(r: &Rat) -> Option<Frac> {
        let n = r.numer().to_i128()?;
        let d = r.denom().to_i128()?;
        // headroom so a 3-term dot product cannot overflow silently
        if n.abs() >= 1 << 96 || d >= 1 << 96 {
            return None;
        }
        Some(Frac { n, d })
    }

    fn to_rat(self) -> Rat {
        Rat::new(Int::from(self.n), Int::from(self.d))
    }

    fn reduce(n: i128, d: i128) -> Option<Frac> {
        debug_assert!(d > 0);
        let g = gcd128(n, d);
        if g == 0 {
            return Some(Frac { n: 0, d: 1 });
        }
        let f = Frac { n: n / g, d: d / g };
        if f.n.abs() >= 1 << 96 || f.d >= 1 << 96 {
            None
        } else {
            Some(f)
        }
    }

    fn mul(self, rhs: Frac) -> Option<Frac> {
        let n = self.n.checked_mul(rhs.n)?;
        if self.d == 1 && rhs.d == 1 {
            return if n.abs() < 1 << 96 {
                Some(Frac { n, d: 1 })
            } else {
                None
            };
        }
        Frac::reduce(n, self.d.checked_mul(rhs.d)?)
    }

    fn add(self, rhs: Frac) -> Option<Frac> {
        if self.d == 1 && rhs.d == 1 {
            let n = self.n.checked_add(rhs.n)?;
            return if n.abs() < 1 << 96 {
                Some(Frac { n, d: 1 })
            } else {
                None
            };
        }
        let n = self
            .n
            .checked_mul(rhs.d)?
            .checked_add(rhs.n.checked_mul(self.d)?)?;
        Frac::reduce(n, self.d.checked_mul(rhs.d)?)
    }

    fn gt(self, rhs: Frac) -> Option<bool> {
        if self.d == 1 && rhs.d == 1 {
            return Some(self.n > rhs.n);
        }
        Some(self.n.checked_mul(rhs.d)? > rhs.n.checked_mul(self.d)?)
    }
}

fn frac_matvec(m: &[[Frac; 3]; 3], v: &[Frac; 3]) -> Option<[Frac; 3]> {
    let mut out = [Frac { n: 0, d: 1 }; 3];
    for (i, row) in m.iter().enumerate() {
        out[i] = row[0]
            .mul(v[0])?
            .add(row[1].mul(v[1])?)?
            .add(row[2].mul(v[2])?)?;
    }
    Some(out)
}

struct SmallNode {
    vec: [Frac; 3],
    word: u32,
    last: ArcLabel,
    over_run: usize,
}

enum WalkOutcome {
    Done,
    /// i128 headroom exhausted; redo with big rationals
    Overflow,
}

// Words are kept as parent-pointer chains and materialized only when a
// value is emitted or reported.
struct WordArena {
    nodes: Vec<(char, Option<u32>)>,
}

impl WordArena {
    fn new() -> Self {
        WordArena { nodes: Vec::new() }
    }

    fn push(&mut self, letter: char, parent: Option<u32>) -> u32 {
        self.nodes.push((letter, parent));
        (self.nodes.len() - 1) as u32
    }

    fn word(&self, id: u32) -> String {
        let mut letters = Vec::new();
        let mut cur = Some(id);
        while let Some(i) = cur {
            let (ch, parent) = self.nodes[i as usize];
            letters.push(ch);
            cur = parent;
        }
        letters.iter().rev().collect()
    }
}

// Window bookkeeping shared by both walks: the new over-run count, or an
// abort when a value re-enters below the cutoff with the dip budget in
// the upper half of the window.
fn step_over_run(
    over: bool,
    parent_run: usize,
    window: usize,
    word: impl Fn() -> String,
    value: impl Fn() -> String,
) -> Result<usize, OrbitError> {
    if over {
        Ok(parent_run + 1)
    } else if 2 * parent_run >= window {
        Err(OrbitError::DipBudgetExceeded {
            word: word(),
            value: value(),
            run: parent_run,
            window,
        })
    } else {
        Ok(0)
    }
}

/// Walk one flip tree: seed `u_root`, mandatory first generator `root`,
/// then breadth-first over reduced continuations.
///
/// Values along a path are not monotone: they may dip back under the
/// cutoff after exceeding it (on P(2,2,5) the δ_γ tree runs 5, 50, 47,
/// …), so a branch is only cut after `window` consecutive over-cutoff
/// values, and any dip reaching half the window aborts the walk rather
/// than risk silent truncation.
fn walk_tree(
    gens: &[Mat3; 3],
    seed: &Vec3,
    root: ArcLabel,
    cutoff: &Rat,
    window: usize,
    out: &mut Vec<(Rat, String)>,
) -> Result<(), OrbitError> {
    let mut arena = WordArena::new();
    let first_vec = gens[root.idx()].mul_vec(seed);
    let first_val = first_vec.entry(root.idx()).clone();
    debug_assert!(first_val > Rat::one());
    let word = arena.push(root.letter(), None);
    let over_run = if first_val > *cutoff { 1 } else { 0 };
    if over_run == 0 {
        out.push((first_val, arena.word(word)));
    }
    let mut frontier = vec![TreeNode {
        vec: first_vec,
        word,
        last: root,
        over_run,
    }];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for node in &frontier {
            for gen in ARCS {
                if gen == node.last {
                    continue;
                }
                let vec = gens[gen.idx()].mul_vec(&node.vec);
                let value = vec.entry(gen.idx()).clone();
                let word = arena.push(gen.letter(), Some(node.word));
                let over_run = step_over_run(
                    value > *cutoff,
                    node.over_run,
                    window,
                    || arena.word(word),
                    || rat_str(&value),
                )?;
                if over_run == 0 {
                    out.push((value.clone(), arena.word(word)));
                }
                if over_run <= window {
                    next.push(TreeNode {
                        vec,
                        word,
                        last: gen,
                        over_run,
                    });
                }
            }
        }
        frontier = next;
    }
    Ok(())
}

// i128 fast path of `walk_tree`; identical traversal and windowing.
fn walk_tree_small(
    gens: &[[[Frac; 3]; 3]; 3],
    seed: &[Frac; 3],
    root: ArcLabel,
    cutoff: Frac,
    window: usize,
    out: &mut Vec<(Rat, String)>,
) -> Result<WalkOutcome, OrbitError> {
    macro_rules! small {
        ($e:expr) => {
            match $e {
                Some(v) => v,
                None => return Ok(WalkOutcome::Overflow),
            }
        };
    }
    let mut arena = WordArena::new();
    let first_vec = small!(frac_matvec(&gens[root.idx()], seed));
    let first_val = first_vec[root.idx()];
    let word = arena.push(root.letter(), None);
    let over_run = if small!(first_val.gt(cutoff)) { 1 } else { 0 };
    if over_run == 0 {
        out.push((first_val.to_rat(), arena.word(word)));
    }
    let mut frontier = vec![SmallNode {
        vec: first_vec,
        word,
        last: root,
        over_run,
    }];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for node in &frontier {
            for gen in ARCS {
                if gen == node.last {
                    continue;
                }
                let vec = small!(frac_matvec(&gens[gen.idx()], &node.vec));
                let value = vec[gen.idx()];
                let word = arena.push(gen.letter(), Some(node.word));
                let over_run = step_over_run(
                    small!(value.gt(cutoff)),
                    node.over_run,
                    window,
                    || arena.word(word),
                    || value.to_rat().to_string(),
                )?;
                if over_run == 0 {
                    out.push((value.to_rat(), arena.word(word)));
                }
                if over_run <= window {
                    next.push(SmallNode {
                        vec,
                        word,
                        last: gen,
                        over_run,
                    });
                }
            }
        }
        frontier = next;
    }
    Ok(WalkOutcome::Done)
}

fn generators_for(kind: SurfaceKind, t: &OrthoTriple) -> [Mat3; 3] {
    match kind {
        SurfaceKind::Pants => pants_generators(t),
        SurfaceKind::Torus => torus_generators(t),
    }
}

/// Enumerate the spectrum of `P(a,b,c)` or `T(a,b,c)` below `cutoff`.
///
/// For the pants each tree collects the orthogeodesics leaving one
/// boundary; `start` picks the tree. The torus has a single boundary and
/// always enumerates all three trees of its orbit. The pruning window
/// doubles automatically when a deep value dip trips the safety margin.
pub fn enumerate_spectrum(
    t: &OrthoTriple,
    kind: SurfaceKind,
    start: StartSel,
    cutoff: &Rat,
) -> Result<Spectrum, OrbitError> {
    let mut window = DEFAULT_PRUNE_WINDOW;
    loop {
        match enumerate_spectrum_with_window(t, kind, start, cutoff, window) {
            Err(OrbitError::DipBudgetExceeded { .. }) if window < MAX_PRUNE_WINDOW => {
                window *= 2;
            }
            other => return other,
        }
    }
}

/// [`enumerate_spectrum`] with a fixed pruning window (tests compare
/// windows to cross-check exhaustiveness).
pub fn enumerate_spectrum_with_window(
    t: &OrthoTriple,
    kind: SurfaceKind,
    start: StartSel,
    cutoff: &Rat,
    window: usize,
) -> Result<Spectrum, OrbitError> {
    if *cutoff <= Rat::one() {
        return Err(OrbitError::CutoffTooSmall(rat_str(cutoff)));
    }
    assert!(
        window >= 4,
        "pruning window too small to detect its own failure"
    );
    let gens = generators_for(kind, t);
    let seeds = special_vectors(t).u;
    let roots: Vec<ArcLabel> = match (kind, start) {
        (SurfaceKind::Pants, StartSel::One(l)) => vec![l],
        _ => ARCS.to_vec(),
    };
    let boundary = match kind {
        SurfaceKind::Pants => start,
        SurfaceKind::Torus => StartSel::All,
    };

    // i128 fast path, falling back to big rationals on overflow
    type SmallInputs = ([[[Frac; 3]; 3]; 3], [[Frac; 3]; 3], Frac);
    let small_inputs = || -> Option<SmallInputs> {
        let mut g = [[[Frac { n: 0, d: 1 }; 3]; 3]; 3];
        for (k, m) in gens.iter().enumerate() {
            for (i, row) in g[k].iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    *e = Frac::from_rat(m.entry(i, j))?;
                }
            }
        }
        let mut s = [[Frac { n: 0, d: 1 }; 3]; 3];
        for (k, v) in seeds.iter().enumerate() {
            for (j, e) in s[k].iter_mut().enumerate() {
                *e = Frac::from_rat(v.entry(j))?;
            }
        }
        Some((g, s, Frac::from_rat(cutoff)?))
    };
    let mut raw: Vec<(Rat, String)> = Vec::new();
    let mut done = false;
    if let Some((g, s, co)) = small_inputs() {
        let mut ok = true;
        for root in &roots {
            match walk_tree_small(&g, &s[root.idx()], *root, co, window, &mut raw)? {
                WalkOutcome::Done => {}
                WalkOutcome::Overflow => {
                    ok = false;
                    break;
                }
            }
        }
        done = ok;
    }
    if !done {
        raw.clear();
        for root in &roots {
            walk_tree(&gens, &seeds[root.idx()], *root, cutoff, window, &mut raw)?;
        }
    }

    let mut grouped: BTreeMap<Rat, (usize, String)> = BTreeMap::new();
    for (value, word) in raw {
        debug_assert!(value > Rat::one());
        grouped
            .entry(value)
            .and_modify(|(m, w)| {
                *m += 1;
                // keep the shortest witness, ties broken lexicographically
                if word.len() < w.len() || (word.len() == w.len() && word < *w) {
                    *w = word.clone();
                }
            })
            .or_insert((1, word));
    }
    let entries = grouped
        .into_iter()
        .map(
            |(cosh_length, (multiplicity, witness_word))| SpectrumEntry {
                cosh_length,
                multiplicity,
                witness_word,
            },
        )
        .collect();
    Ok(Spectrum {
        surface_kind: kind,
        triple: t.clone(),
        boundary,
        cutoff: cutoff.clone(),
        entries,
    })
}

/// Value a single word contributes to the spectrum: the first letter
/// selects the seed `u_*`, each letter applies a flip, and the value is
/// the coordinate the final letter rewrites. Used to follow specific
/// paths (like the alternating η-path) far beyond any enumeration cutoff.
pub fn spectrum_word_value(
    t: &OrthoTriple,
    kind: SurfaceKind,
    word: &str,
) -> Result<Rat, OrbitError> {
    let letters: Vec<ArcLabel> = word
        .chars()
        .map(ArcLabel::from_letter)
        .collect::<Option<_>>()
        .ok_or_else(|| OrbitError::BadWord(word.to_string()))?;
    if letters.is_empty() || letters.windows(2).any(|w| w[0] == w[1]) {
        return Err(OrbitError::BadWord(word.to_string()));
    }
    let gens = generators_for(kind, t);
    let mut v = special_vectors(t).u[letters[0].idx()].clone();
    for l in &letters {
        v = gens[l.idx()].mul_vec(&v);
    }
    Ok(v.entry(letters.last().unwrap().idx()).clone())
}

/// Enumerate with no pruning to a fixed word length; exhaustiveness
/// oracle for the pruned walk (quadratic blowup, test use only).
pub fn enumerate_to_depth(
    t: &OrthoTriple,
    kind: SurfaceKind,
    start: StartSel,
    depth: usize,
) -> Vec<(Rat, String)> {
    let gens = generators_for(kind, t);
    let seeds = special_vectors(t).u;
    let roots: Vec<ArcLabel> = match (kind, start) {
        (SurfaceKind::Pants, StartSel::One(l)) => vec![l],
        _ => ARCS.to_vec(),
    };
    let mut out = Vec::new();
    for root in roots {
        let mut frontier = vec![(gens[root.idx()].mul_vec(&seeds[root.idx()]), root, {
            let mut s = String::new();
            s.push(root.letter());
            s
        })];
        out.push((
            frontier[0].0.entry(root.idx()).clone(),
            frontier[0].2.clone(),
        ));
        for _ in 1..depth {
            let mut next = Vec::new();
            for (vec, last, word) in &frontier {
                for gen in ARCS {
                    if gen == *last {
                        continue;
                    }
                    let v = gens[gen.idx()].mul_vec(vec);
                    let mut w = word.clone();
                    w.push(gen.letter());
                    out.push((v.entry(gen.idx()).clone(), w.clone()));
                    next.push((v, gen, w));
                }
            }
            frontier = next;
        }
    }
    out
}

/// Per-boundary data of the boundary-length identity check.
#[derive(Debug, Clone, Serialize)]
pub struct BasmajianBoundary {
    pub boundary: String,
    pub target_length: f64,
    pub partial_sum: f64,
    pub relative_error: f64,
    pub n_terms: usize,
}

/// Partial sums of the boundary-length identity at a cutoff.
#[derive(Debug, Clone, Serialize)]
pub struct BasmajianReport {
    pub kind: String,
    pub triple: [String; 3],
    pub cutoff: String,
    pub boundaries: Vec<BasmajianBoundary>,
    /// interval-width bookkeeping used by the sums
    pub convention: &'static str,
}

const BASMAJIAN_CONVENTION: &str = "width ln((x+1)/(x-1)) per orthogeodesic foot; orthobasis \
arcs contribute one width per endpoint on the boundary; each tree entry is counted twice \
(the two isometric interval trees per boundary)";

/// Interval width `2·log coth(ℓ/2) = ln((x+1)/(x−1))` cut out on the
/// boundary by one foot of an orthogeodesic with cosh-length `x`.
pub fn foot_width(x: &Rat) -> f64 {
    let v = x.to_f64().expect("cosh value out of f64 range");
    debug_assert!(v > 1.0);
    (2.0 / (v - 1.0)).ln_1p()
}

/// Evaluate the boundary-length identity partial sums below `cutoff`.
///
/// Pants: one report per boundary, arcs counted once per endpoint on
/// that boundary (the two positive seed coordinates) and the boundary's
/// tree twice. Torus: a single report for ∂T with each arc counted twice
/// and all three trees twice.
pub fn basmajian_report(
    t: &OrthoTriple,
    kind: SurfaceKind,
    cutoff: &Rat,
) -> Result<BasmajianReport, OrbitError> {
    let mut boundaries = Vec::new();
    match kind {
        SurfaceKind::Pants => {
            let bdata = crate::geometry::pants_boundary(t);
            let arcs = [t.a(), t.b(), t.c()];
            for (i, label) in ARCS.iter().enumerate() {
                let spec = enumerate_spectrum(t, kind, StartSel::One(*label), cutoff)?;
                // arcs with one foot on this boundary: the other two
                let mut sum = 0.0;
                let mut n_terms = 0;
                for (j, arc) in arcs.iter().enumerate() {
                    if j != i {
                        sum += foot_width(arc);
                        n_terms += 1;
                    }
                }
                for e in &spec.entries {
                    sum += 2.0 * e.multiplicity as f64 * foot_width(&e.cosh_length);
                    n_terms += 2 * e.multiplicity;
                }
                let target = trace_sq_to_length(bdata.trace_squares()[i]);
                boundaries.push(BasmajianBoundary {
                    boundary: label.name().to_string(),
                    target_length: target,
                    partial_sum: sum,
                    relative_error: (target - sum) / target,
                    n_terms,
                });
            }
        }
        SurfaceKind::Torus => {
            let spec = enumerate_spectrum(t, kind, StartSel::All, cutoff)?;
            let mut sum = 0.0;
            let mut n_terms = 0;
            for arc in [t.a(), t.b(), t.c()] {
                sum += 2.0 * foot_width(arc);
                n_terms += 2;
            }
            for e in &spec.entries {
                sum += 2.0 * e.multiplicity as f64 * foot_width(&e.cosh_length);
                n_terms += 2 * e.multiplicity;
            }
            let target = trace_sq_to_length(&{
                let tr = crate::geometry::torus_boundary_trace(t);
                &tr * &tr
            });
            boundaries.push(BasmajianBoundary {
                boundary: "all".to_string(),
                target_length: target,
                partial_sum: sum,
                relative_error: (target - sum) / target,
                n_terms,
            });
        }
    }
    Ok(BasmajianReport {
        kind: kind.as_str().to_string(),
        triple: t.to_strings(),
        cutoff: rat_str(cutoff),
        boundaries,
        convention: BASMAJIAN_CONVENTION,
    })
}

/// Wire form of a spectrum: rationals as `p/q` strings, generators a/b/g.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpectrumFile {
    pub surface_kind: String,
    pub triple: [String; 3],
    pub boundary: String,
    pub cutoff: String,
    pub entries: Vec<SpectrumEntryFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpectrumEntryFile {
    pub cosh: String,
    pub mult: usize,
    pub word: String,
}

impl Spectrum {
    pub fn to_file(&self) -> SpectrumFile {
        SpectrumFile {
            surface_kind: self.surface_kind.as_str().to_string(),
            triple: self.triple.to_strings(),
            boundary: self.boundary.label().to_string(),
            cutoff: rat_str(&self.cutoff),
            entries: self
                .entries
                .iter()
                .map(|e| SpectrumEntryFile {
                    cosh: rat_str(&e.cosh_length),
                    mult: e.multiplicity,
                    word: e.witness_word.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("spectrum serializes")
    }
}

/// Parse and sanity-check a spectrum file: rationals well-formed, words
/// reduced over a/b/g, entries strictly increasing.
pub fn validate_spectrum_file(json: &str) -> Result<SpectrumFile, String> {
    let file: SpectrumFile = serde_json::from_str(json).map_err(|e| e.to_string())?;
    if !matches!(file.surface_kind.as_str(), "pants" | "torus") {
        return Err(format!("unknown surface kind {:?}", file.surface_kind));
    }
    if !matches!(file.boundary.as_str(), "alpha" | "beta" | "gamma" | "all") {
        return Err(format!("unknown boundary {:?}", file.boundary));
    }
    for s in file.triple.iter().chain(std::iter::once(&file.cutoff)) {
        crate::exact::parse_rat(s).map_err(|e| e.to_string())?;
    }
    let mut prev: Option<Rat> = None;
    for e in &file.entries {
        let v = crate::exact::parse_rat(&e.cosh).map_err(|e| e.to_string())?;
        if let Some(p) = &prev {
            if v <= *p {
                return Err("entries not strictly increasing".to_string());
            }
        }
        prev = Some(v);
        if e.mult == 0 {
            return Err("zero multiplicity".to_string());
        }
        let ok = !e.word.is_empty()
            && e.word.chars().all(|c| ArcLabel::from_letter(c).is_some())
            && e.word.as_bytes().windows(2).all(|w| w[0] != w[1]);
        if !ok {
            return Err(format!("bad word {:?}", e.word));
        }
    }
    Ok(file)
}
