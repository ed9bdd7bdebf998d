//! Closed-form hyperbolic identities for right-angled hexagons, pairs of
//! pants, and one-holed tori, all exact in cosh-coordinates.

use crate::exact::{integer_sqrt, is_integer, parse_rat, rat_int, rat_str, Int, Rat};
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("cosh-length must exceed 1, got {0}")]
    NotCosh(String),
    #[error("invalid triple {0:?}: expected three comma-separated rationals")]
    BadTriple(String),
    #[error("signature (g,n) = ({0},{1}) has no hyperbolic structure with boundary")]
    BadSignature(u32, u32),
}

/// Exact cosh-lengths `(a,b,c)` of the three orthobasis arcs; each > 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrthoTriple {
    a: Rat,
    b: Rat,
    c: Rat,
}

impl OrthoTriple {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self, GeometryError> {
        for x in [&a, &b, &c] {
            if *x <= Rat::one() {
                return Err(GeometryError::NotCosh(rat_str(x)));
            }
        }
        Ok(OrthoTriple { a, b, c })
    }

    pub fn from_ints(a: u64, b: u64, c: u64) -> Self {
        OrthoTriple::new(rat_int(a as i64), rat_int(b as i64), rat_int(c as i64))
            .expect("integer cosh-lengths must be >= 2")
    }

    /// Parse `"a,b,c"` where each entry is `p` or `p/q`.
    pub fn parse(s: &str) -> Result<Self, GeometryError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(GeometryError::BadTriple(s.to_string()));
        }
        let mut vals = Vec::with_capacity(3);
        for p in parts {
            vals.push(parse_rat(p).map_err(|_| GeometryError::BadTriple(s.to_string()))?);
        }
        OrthoTriple::new(vals[0].clone(), vals[1].clone(), vals[2].clone())
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }
    pub fn b(&self) -> &Rat {
        &self.b
    }
    pub fn c(&self) -> &Rat {
        &self.c
    }

    pub fn entries(&self) -> [&Rat; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// True when all three entries are integers (necessarily ≥ 2).
    pub fn is_integral(&self) -> bool {
        self.entries().iter().all(|x| is_integer(x))
    }

    pub fn to_strings(&self) -> [String; 3] {
        [rat_str(&self.a), rat_str(&self.b), rat_str(&self.c)]
    }
}

impl std::fmt::Display for OrthoTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({},{},{})",
            rat_str(&self.a),
            rat_str(&self.b),
            rat_str(&self.c)
        )
    }
}

/// arcosh for `x ≥ 1`.
pub fn arcosh(x: f64) -> f64 {
    debug_assert!(x >= 1.0);
    x.acosh()
}

/// Geodesic length from an exact cosh value.
pub fn cosh_to_length(x: &Rat) -> f64 {
    arcosh(x.to_f64().expect("cosh value out of f64 range"))
}

/// Boundary length `2·arcosh(√t/2)` from an exact squared trace `t > 4`.
pub fn trace_sq_to_length(t: &Rat) -> f64 {
    let v = t.to_f64().expect("trace square out of f64 range");
    2.0 * arcosh(v.sqrt() / 2.0)
}

/// Exact square of the cosh of the hexagon side opposite the `z`-side,
/// `(xy+z)²/((x²−1)(y²−1))`, for a right-angled hexagon with alternating
/// cosh-sides `(x,y,z)`.
pub fn hexagon_opposite_cosh_sq(x: &Rat, y: &Rat, z: &Rat) -> Result<Rat, GeometryError> {
    for v in [x, y, z] {
        if *v <= Rat::one() {
            return Err(GeometryError::NotCosh(rat_str(v)));
        }
    }
    let one = Rat::one();
    let num = x * y + z;
    Ok(&num * &num / ((x * x - &one) * (y * y - &one)))
}

/// Floating companion of [`hexagon_opposite_cosh_sq`]: the un-squared
/// cosh of the opposite side.
pub fn hexagon_opposite_cosh(x: &Rat, y: &Rat, z: &Rat) -> Result<f64, GeometryError> {
    let sq = hexagon_opposite_cosh_sq(x, y, z)?;
    Ok(sq.to_f64().expect("cosh square out of f64 range").sqrt())
}

/// Exact squared boundary traces of a pair of pants, with floating
/// lengths alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    pub trace_sq_alpha: Rat,
    pub trace_sq_beta: Rat,
    pub trace_sq_gamma: Rat,
    pub lengths: [f64; 3],
}

impl BoundaryData {
    pub fn trace_squares(&self) -> [&Rat; 3] {
        [
            &self.trace_sq_alpha,
            &self.trace_sq_beta,
            &self.trace_sq_gamma,
        ]
    }

    pub fn total_length(&self) -> f64 {
        self.lengths.iter().sum()
    }
}

fn boundary_trace_sq(p: &Rat, q: &Rat, r: &Rat) -> Rat {
    // 4(qr+p)²/((q²−1)(r²−1))
    let one = Rat::one();
    let num = q * r + p;
    rat_int(4) * &num * &num / ((q * q - &one) * (r * r - &one))
}

/// The three squared boundary traces of the pants `P(a,b,c)`.
pub fn pants_boundary(t: &OrthoTriple) -> BoundaryData {
    let ta = boundary_trace_sq(t.a(), t.b(), t.c());
    let tb = boundary_trace_sq(t.b(), t.c(), t.a());
    let tg = boundary_trace_sq(t.c(), t.a(), t.b());
    let lengths = [
        trace_sq_to_length(&ta),
        trace_sq_to_length(&tb),
        trace_sq_to_length(&tg),
    ];
    BoundaryData {
        trace_sq_alpha: ta,
        trace_sq_beta: tb,
        trace_sq_gamma: tg,
        lengths,
    }
}

/// Parameters of the three-term recursion for the orthogeodesics spiraling
/// between the β- and γ-arcs: `τ` is the squared α-boundary trace and `s`
/// normalizes the seed values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaParams {
    pub tau: Rat,
    pub s: Rat,
}

pub fn eta_params(t: &OrthoTriple) -> EtaParams {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let one = Rat::one();
    let sum = a * a + b * b + c * c + rat_int(2) * a * b * c - &one;
    EtaParams {
        tau: boundary_trace_sq(a, b, c),
        s: rat_int(2) * sum / (c * c - &one),
    }
}

/// `[η₀, …, η_{k_max}]` where `η₀ = s−1`, `η₁ = τs−1`, `η₂ = τ²s−2τs+s−1`
/// and `η_{k+3} = (τ−1)(η_{k+2} − η_{k+1}) + η_k`.
pub fn eta_sequence(t: &OrthoTriple, k_max: usize) -> Vec<Rat> {
    let EtaParams { tau, s } = eta_params(t);
    let one = Rat::one();
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(&s - &one);
    if k_max >= 1 {
        out.push(&tau * &s - &one);
    }
    if k_max >= 2 {
        out.push(&tau * &tau * &s - rat_int(2) * &tau * &s + &s - &one);
    }
    while out.len() <= k_max {
        let n = out.len();
        let next = (&tau - &one) * (&out[n - 1] - &out[n - 2]) + &out[n - 3];
        out.push(next);
    }
    out
}

/// `|tr(∂T)| = 2(a+b+c−1)²/((a−1)(b−1)(c−1)) + 2` for the one-holed torus.
pub fn torus_boundary_trace(t: &OrthoTriple) -> Rat {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let one = Rat::one();
    let s = a + b + c - &one;
    rat_int(2) * &s * &s / ((a - &one) * (b - &one) * (c - &one)) + rat_int(2)
}

/// Squared traces of the accompanying simple closed geodesics
/// `(λ_α, λ_β, λ_γ)`.
pub fn torus_accompanying_trace_squares(t: &OrthoTriple) -> [Rat; 3] {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let one = Rat::one();
    let s = a + b + c - &one;
    let sq = &s * &s;
    [
        &sq / ((b - &one) * (c - &one)),
        &sq / ((c - &one) * (a - &one)),
        &sq / ((a - &one) * (b - &one)),
    ]
}

/// Upper bound `1/(cosh(L/(12g−12+6n)) − 1) + 1` for the cosh of the
/// orthosystole of a surface with signature `(g,n)` and total boundary
/// length `L`.
pub fn bavard_upper_bound(l: f64, g: u32, n: u32) -> Result<f64, GeometryError> {
    let denom = 12 * g as i64 + 6 * n as i64 - 12;
    if denom <= 0 || l <= 0.0 {
        return Err(GeometryError::BadSignature(g, n));
    }
    Ok(1.0 / ((l / denom as f64).cosh() - 1.0) + 1.0)
}

/// Orthosystole bounds for a one-holed torus of boundary length `L`:
/// strict lower bound with numerator 4 (5 for ortho-integral tori) and
/// the `(g,n) = (1,1)` upper bound.
pub fn torus_osys_bounds(l: f64, oi: bool) -> (f64, f64) {
    assert!(l > 0.0);
    let num = if oi { 5.0 } else { 4.0 };
    let lower = num / ((l / 2.0).cosh() - 1.0) + 1.0;
    let upper = 1.0 / ((l / 6.0).cosh() - 1.0) + 1.0;
    (lower, upper)
}

/// `2 − |tr(∂T)|`, the constant of the Markoff-type equation attached to
/// the torus `T(a,b,c)`.
pub fn markoff_constant(t: &OrthoTriple) -> Rat {
    rat_int(2) - torus_boundary_trace(t)
}

/// Intermediate data of the Markoff-equation verification.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkoffReport {
    pub trace_squares: [Rat; 3],
    /// all three squared traces are integers
    pub squares_integral: bool,
    pub product: Rat,
    /// integer square root of the product, when it exists
    pub product_root: Option<Int>,
    /// sign of the root that satisfies the equation
    pub root_sign: Option<i8>,
    pub boundary_trace: Rat,
    pub constant: Rat,
    pub success: bool,
}

/// Check that the accompanying traces solve the Markoff-type equation
/// `X² + Y² + Z² − XYZ = 2 − |tr(∂T)|` with an integer product `XYZ`.
///
/// Failure (not an error) signals a torus that cannot be ortho-integral.
pub fn markoff_verify(t: &OrthoTriple) -> MarkoffReport {
    let m = torus_accompanying_trace_squares(t);
    let squares_integral = m.iter().all(is_integer);
    let product = &m[0] * &m[1] * &m[2];
    let boundary_trace = torus_boundary_trace(t);
    let constant = rat_int(2) - &boundary_trace;
    let product_root = if squares_integral && is_integer(&product) && !product.is_negative() {
        integer_sqrt(product.numer())
    } else {
        None
    };
    let sum = &m[0] + &m[1] + &m[2];
    let mut root_sign = None;
    if let Some(p) = &product_root {
        let p = Rat::from_integer(p.clone());
        if &sum - &p == constant {
            root_sign = Some(1);
        } else if &sum + &p == constant {
            root_sign = Some(-1);
        }
    }
    let success = squares_integral && product_root.is_some() && root_sign.is_some();
    MarkoffReport {
        trace_squares: m,
        squares_integral,
        product,
        product_root,
        root_sign,
        boundary_trace,
        constant,
        success,
    }
}
