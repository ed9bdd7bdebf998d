//! Arbitrary-precision integers and rationals, plus the elementary number
//! theory the rest of the crate consumes: factorization, squarefree
//! splits, exact rational square roots, and Legendre/Hilbert symbols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (`BigRational` canonicalizes on construction).
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
}

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(int(num), int(den))
}

/// True when `x` has denominator 1.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Render as `p` or `p/q`, the format used across the CLI and JSON output.
pub fn rat_str(x: &Rat) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p` or `p/q` with optional sign and surrounding whitespace.
pub fn parse_rat(s: &str) -> Result<Rat, ExactError> {
    let t = s.trim();
    let bad = || ExactError::BadRational(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    let parse_int = |p: &str| -> Result<Int, ExactError> {
        let p = p.trim();
        if p.is_empty() || p.len() > 10_000 {
            return Err(bad());
        }
        p.parse::<Int>().map_err(|_| bad())
    };
    match t.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(t)?)),
        Some((num, den)) => {
            let n = parse_int(num)?;
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(ExactError::ZeroDenominator(s.to_string()));
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// `n = d·k²` with `d` squarefree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeSplit {
    pub d: Int,
    pub k: Int,
}

/// A place of the rationals: a finite prime or the real place.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(Int),
    Infinite,
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

/// Prime factorization by trial division with a 6k±1 wheel.
///
/// Every integer this crate factors is well under 10¹², so nothing more
/// clever is warranted. Returns `(prime, exponent)` pairs with primes
/// strictly increasing; `factorize(1)` is empty.
pub fn factorize(n: &Int) -> Vec<(Int, u32)> {
    assert!(n.is_positive(), "factorize requires n >= 1, got {n}");
    let mut m = n
        .to_u128()
        .expect("factorize supports inputs below 2^128 only");
    let mut out: Vec<(Int, u32)> = Vec::new();
    let mut push = |p: u128, e: u32| {
        if e > 0 {
            out.push((Int::from(p), e));
        }
    };
    for p in [2u128, 3] {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        push(p, e);
    }
    let mut d: u128 = 5;
    let mut step: u128 = 2; // alternates 2,4 to hit 6k±1
    while d * d <= m {
        let mut e = 0;
        while m.is_multiple_of(d) {
            m /= d;
            e += 1;
        }
        push(d, e);
        d += step;
        step = 6 - step;
    }
    if m > 1 {
        push(m, 1);
    }
    out
}

/// Split `n ≥ 1` as `d·k²` with `d` squarefree.
pub fn squarefree_split(n: &Int) -> SquarefreeSplit {
    let mut d = Int::one();
    let mut k = Int::one();
    for (p, e) in factorize(n) {
        if e % 2 == 1 {
            d *= &p;
        }
        k *= p.pow(e / 2);
    }
    SquarefreeSplit { d, k }
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub fn squarefree_part(n: &Int) -> Int {
    assert!(!n.is_zero(), "squarefree part of zero is undefined");
    let s = squarefree_split(&n.abs());
    if n.is_negative() {
        -s.d
    } else {
        s.d
    }
}

/// `Some(r)` with `r² = n` when `n` is a perfect square.
pub fn integer_sqrt(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root in the rationals, when one exists.
pub fn rational_sqrt(x: &Rat) -> Option<Rat> {
    assert!(!x.is_negative(), "rational_sqrt requires x >= 0, got {x}");
    let num = integer_sqrt(x.numer())?;
    let den = integer_sqrt(x.denom())?;
    Some(Rat::new(num, den))
}

/// Legendre symbol `(a|p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre_symbol(a: &Int, p: &Int) -> i32 {
    debug_assert!(
        p > &int(2) && p.is_odd(),
        "legendre_symbol needs an odd prime"
    );
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - Int::one()) / int(2);
    let r = a.modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn split_prime(n: &Int, p: &Int) -> (u32, Int) {
    let mut e = 0u32;
    let mut u = n.clone();
    while u.mod_floor(p).is_zero() {
        u /= p;
        e += 1;
    }
    (e, u)
}

// (u-1)/2 mod 2 for odd u, i.e. 0 for u ≡ 1 (4) and 1 for u ≡ 3 (4).
fn eps2(u: &Int) -> u32 {
    debug_assert!(u.is_odd());
    if u.mod_floor(&int(4)) == int(1) {
        0
    } else {
        1
    }
}

// (u²-1)/8 mod 2 for odd u, i.e. 0 for u ≡ ±1 (8) and 1 for u ≡ ±3 (8).
fn omega2(u: &Int) -> u32 {
    debug_assert!(u.is_odd());
    let m = u.mod_floor(&int(8));
    if m == int(1) || m == int(7) {
        0
    } else {
        1
    }
}

/// Hilbert symbol `(a,b)_v` over the completion of the rationals at `v`.
///
/// Symmetric in `a,b` and invariant under multiplying either argument by
/// a nonzero square. At the real place it is −1 exactly when both
/// arguments are negative; at p = 2 the standard ε/ω unit formula is used
/// after stripping powers of 2.
pub fn hilbert_symbol(a: &Int, b: &Int, v: &Place) -> i32 {
    assert!(
        !a.is_zero() && !b.is_zero(),
        "hilbert_symbol needs nonzero arguments"
    );
    match v {
        Place::Infinite => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) if *p == int(2) => {
            let (alpha, u) = split_prime(a, p);
            let (beta, w) = split_prime(b, p);
            let exp = eps2(&u) * eps2(&w) + alpha * omega2(&w) + beta * omega2(&u);
            if exp.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            debug_assert!(p.is_odd() && p > &Int::one());
            let (alpha, u) = split_prime(a, p);
            let (beta, w) = split_prime(b, p);
            let mut sym = 1i32;
            if alpha % 2 == 1 && beta % 2 == 1 && eps2(p) == 1 {
                sym = -sym;
            }
            if beta % 2 == 1 {
                sym *= legendre_symbol(&u, p);
            }
            if alpha % 2 == 1 {
                sym *= legendre_symbol(&w, p);
            }
            sym
        }
    }
}

/// The places where `(a,b)` can possibly ramify: ∞ and the primes
/// dividing `2ab`.
pub fn candidate_places(a: &Int, b: &Int) -> Vec<Place> {
    let mut primes: Vec<Int> = factorize(&(int(2) * a.abs() * b.abs()))
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    primes.sort();
    primes.dedup();
    let mut out: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    out.push(Place::Infinite);
    out
}
