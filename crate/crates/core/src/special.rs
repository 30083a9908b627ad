//! Clebsch–Gordan coefficients, Wigner 3j symbols and spherical harmonics.
//!
//! Condon–Shortley phases throughout. Coupling coefficients are evaluated
//! with the Racah closed-form sum in exact rational arithmetic; only the
//! final square root is taken in floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cis, Real, C};

/// Indices of `⟨j1 m1; j2 m2 | J M⟩`, each stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CouplingIndex {
    pub j1: i64,
    pub m1: i64,
    pub j2: i64,
    pub m2: i64,
    pub j: i64,
    pub m: i64,
}

impl CouplingIndex {
    /// Arguments are doubled: pass `1` for `j = 1/2`.
    pub fn from_twice(j1: i64, m1: i64, j2: i64, m2: i64, j: i64, m: i64) -> Result<Self> {
        let idx = Self {
            j1,
            m1,
            j2,
            m2,
            j,
            m,
        };
        for (jj, mm) in [(j1, m1), (j2, m2), (j, m)] {
            if jj < 0 {
                return Err(Error::InvalidIndex(format!("negative 2j = {jj}")));
            }
            if mm.abs() > jj || (jj - mm) % 2 != 0 {
                return Err(Error::InvalidIndex(format!(
                    "2m = {mm} incompatible with 2j = {jj}"
                )));
            }
        }
        Ok(idx)
    }

    /// Same as [`CouplingIndex::from_twice`] but with floating arguments such as `0.5`.
    pub fn new(j1: f64, m1: f64, j2: f64, m2: f64, j: f64, m: f64) -> Result<Self> {
        let tw = |x: f64| -> Result<i64> {
            let t = 2.0 * x;
            if (t - t.round()).abs() > 1e-9 {
                return Err(Error::InvalidIndex(format!("{x} is not a half-integer")));
            }
            Ok(t.round() as i64)
        };
        Self::from_twice(tw(j1)?, tw(m1)?, tw(j2)?, tw(m2)?, tw(j)?, tw(m)?)
    }

    fn selection_rules_hold(&self) -> bool {
        let Self {
            j1,
            m1,
            j2,
            m2,
            j,
            m,
        } = *self;
        m1 + m2 == m && (j1 - j2).abs() <= j && j <= j1 + j2 && (j1 + j2 + j) % 2 == 0
    }
}

fn factorial(n: i64) -> BigInt {
    debug_assert!(n >= 0);
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact square of the coefficient together with its sign.
fn clebsch_gordan_exact(idx: &CouplingIndex) -> (i8, BigRational) {
    if !idx.selection_rules_hold() {
        return (0, BigRational::zero());
    }
    // all halved quantities below are integers once the selection rules hold
    let CouplingIndex {
        j1,
        m1,
        j2,
        m2,
        j,
        m,
    } = *idx;
    let h = |x: i64| x / 2;
    let a = h(j1 + j2 - j);
    let b = h(j1 - j2 + j);
    let c = h(-j1 + j2 + j);
    let total = h(j1 + j2 + j) + 1;

    let mut prefactor = BigRational::new(
        BigInt::from(j + 1) * factorial(a) * factorial(b) * factorial(c),
        factorial(total),
    );
    prefactor *= BigRational::from_integer(
        factorial(h(j1 + m1))
            * factorial(h(j1 - m1))
            * factorial(h(j2 + m2))
            * factorial(h(j2 - m2))
            * factorial(h(j + m))
            * factorial(h(j - m)),
    );

    let k_min = 0.max(h(j2 - j - m1)).max(h(j1 - j + m2));
    let k_max = a.min(h(j1 - m1)).min(h(j2 + m2));
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let denom = factorial(k)
            * factorial(a - k)
            * factorial(h(j1 - m1) - k)
            * factorial(h(j2 + m2) - k)
            * factorial(h(j - j2 + m1) + k)
            * factorial(h(j - j1 - m2) + k);
        let term = BigRational::new(BigInt::one(), denom);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return (0, sum);
    }
    let sign = if sum.is_negative() { -1 } else { 1 };
    (sign, prefactor * &sum * &sum)
}

/// `⟨j1 m1; j2 m2 | J M⟩`, zero outside the selection rules.
pub fn clebsch_gordan<T: Real>(idx: &CouplingIndex) -> T {
    let (sign, square) = clebsch_gordan_exact(idx);
    if sign == 0 {
        return T::zero();
    }
    let magnitude = square.to_f64().expect("finite rational").sqrt();
    T::lit(f64::from(sign) * magnitude)
}

/// Wigner 3j symbol from doubled arguments.
///
/// `(j1 j2 j3; m1 m2 m3) = (-1)^{j1-j2-m3} ⟨j1 m1; j2 m2 | j3 -m3⟩ / √(2 j3 + 1)`.
pub fn wigner3j<T: Real>(j1: i64, j2: i64, j3: i64, m1: i64, m2: i64, m3: i64) -> Result<T> {
    let idx = CouplingIndex::from_twice(j1, m1, j2, m2, j3, -m3)?;
    if m1 + m2 + m3 != 0 {
        return Ok(T::zero());
    }
    let cg: T = clebsch_gordan(&idx);
    let phase = (j1 - j2 - m3) / 2;
    let sign = if phase.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    };
    Ok(sign * cg / T::from_count((j3 + 1) as usize).sqrt())
}

/// Degree and order of a spherical harmonic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HarmonicIndex {
    l: u32,
    m: i32,
}

impl HarmonicIndex {
    pub fn new(l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return Err(Error::InvalidIndex(format!(
                "|m| = {} exceeds l = {l}",
                m.abs()
            )));
        }
        Ok(Self { l, m })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Position in a table laid out as `l² + (m + l)`.
    pub fn flat(&self) -> usize {
        (self.l * self.l) as usize + (self.m + self.l as i32) as usize
    }

    /// All indices with `l ≤ l_max` in table order.
    pub fn up_to(l_max: u32) -> impl Iterator<Item = HarmonicIndex> {
        (0..=l_max).flat_map(|l| (-(l as i32)..=l as i32).map(move |m| HarmonicIndex { l, m }))
    }
}

/// Every `Y_{l,m}(θ, φ)` with `l ≤ l_max`, indexed by [`HarmonicIndex::flat`].
///
/// Normalized associated Legendre functions are seeded along the sectoral
/// diagonal `m = l` and raised in `l` with the standard three-term recurrence.
#[allow(clippy::needless_range_loop)] // recurrences read best with explicit indices
pub fn spherical_harmonics_table<T: Real>(l_max: u32, theta: T, phi: T) -> Vec<C<T>> {
    let n = (l_max as usize + 1).pow(2);
    let mut out = vec![C::zero(); n];
    let (st, ct) = theta.sin_cos();
    let lm = l_max as usize;
    // p[l][m] = normalized P_l^m(cos θ) including the Condon–Shortley phase
    let mut p = vec![vec![T::zero(); lm + 1]; lm + 1];
    p[0][0] = T::one() / (T::lit(4.0) * T::PI()).sqrt();
    for m in 1..=lm {
        let mf = T::from_count(m);
        p[m][m] =
            -((T::lit(2.0) * mf + T::one()) / (T::lit(2.0) * mf)).sqrt() * st * p[m - 1][m - 1];
    }
    for m in 0..lm {
        let mf = T::from_count(m);
        p[m + 1][m] = (T::lit(2.0) * mf + T::lit(3.0)).sqrt() * ct * p[m][m];
    }
    for m in 0..=lm {
        let mf = T::from_count(m);
        for l in (m + 2)..=lm {
            let lf = T::from_count(l);
            let a = ((T::lit(4.0) * lf * lf - T::one()) / (lf * lf - mf * mf)).sqrt();
            let l1 = lf - T::one();
            let b = ((l1 * l1 - mf * mf) / (T::lit(4.0) * l1 * l1 - T::one())).sqrt();
            p[l][m] = a * (ct * p[l - 1][m] - b * p[l - 2][m]);
        }
    }
    for l in 0..=lm {
        for m in 0..=l {
            let y = cis(T::from_count(m) * phi) * p[l][m];
            let base = l * l + l;
            out[base + m] = y;
            if m > 0 {
                let sign = if m % 2 == 0 { T::one() } else { -T::one() };
                out[base - m] = y.conj() * sign;
            }
        }
    }
    out
}

/// `Y_{l,m}(θ, φ)` in the Condon–Shortley convention.
pub fn spherical_harmonic<T: Real>(idx: HarmonicIndex, theta: T, phi: T) -> C<T> {
    spherical_harmonics_table(idx.l, theta, phi)[idx.flat()]
}
