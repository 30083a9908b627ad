use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{Real, C};
use crate::special::{clebsch_gordan, spherical_harmonics_table, CouplingIndex, HarmonicIndex};
use crate::states::Spin;

#[derive(Debug, Clone, PartialEq)]
struct Term<T> {
    row: usize,
    col: usize,
    harmonic: usize,
    weight: T,
}

/// Stratonovich–Weyl kernel `Δ^j(θ, φ)` on the sphere.
///
/// Entry `(m', m'')` is
/// `√(4π/(2j+1)) Σ_{l,m} ε_l (-1)^{j-m'} ⟨j m''; j -m' | l m⟩ Y_{l,m}(θ, φ)`,
/// which for `j = 1/2` and `ε = (+1, +1)` is `(I + √3 n·σ)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SwKernel<T> {
    spin: Spin,
    signs: Vec<i8>,
    terms: Vec<Term<T>>,
}

impl<T: Real> SwKernel<T> {
    /// `signs[l]` is `ε_l` for `l = 0 … 2j`; `ε_0` must be `+1`.
    pub fn new(spin: Spin, signs: &[i8]) -> Result<Self> {
        if signs.len() != spin.dim() {
            return Err(Error::InvalidSigns(format!(
                "expected {} signs, got {}",
                spin.dim(),
                signs.len()
            )));
        }
        if signs[0] != 1 {
            return Err(Error::InvalidSigns("ε_0 must be +1".into()));
        }
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidSigns(format!("sign {bad} is not ±1")));
        }

        let tw = spin.twice() as i64;
        let d = spin.dim();
        let norm = (T::lit(4.0) * T::PI() / T::from_count(d)).sqrt();
        let mut terms = Vec::new();
        for row in 0..d {
            let m1 = spin.twice_m(row) as i64; // 2m'
            let parity = if row % 2 == 0 { T::one() } else { -T::one() }; // (-1)^{j-m'}
            for col in 0..d {
                let m2 = spin.twice_m(col) as i64; // 2m''
                let twice_m = m2 - m1;
                for (l, &eps) in signs.iter().enumerate() {
                    let idx = CouplingIndex::from_twice(tw, m2, tw, -m1, 2 * l as i64, twice_m);
                    let Ok(idx) = idx else { continue };
                    let cg: T = clebsch_gordan(&idx);
                    if cg == T::zero() {
                        continue;
                    }
                    let harmonic = HarmonicIndex::new(l as u32, (twice_m / 2) as i32)
                        .expect("|m| ≤ l whenever the coupling index is valid")
                        .flat();
                    let weight = norm * T::from_i8(eps).unwrap() * parity * cg;
                    terms.push(Term {
                        row,
                        col,
                        harmonic,
                        weight,
                    });
                }
            }
        }
        Ok(Self {
            spin,
            signs: signs.to_vec(),
            terms,
        })
    }

    /// Kernel with `ε_l = +1` for every `l`.
    pub fn standard(spin: Spin) -> Self {
        Self::new(spin, &vec![1; spin.dim()]).expect("all-plus signs are valid")
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    pub fn evaluate(&self, theta: T, phi: T) -> CMatrix<T> {
        let ys = spherical_harmonics_table(self.spin.twice(), theta, phi);
        self.assemble(&ys)
    }

    fn assemble(&self, ys: &[C<T>]) -> CMatrix<T> {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for t in &self.terms {
            m[(t.row, t.col)] = m[(t.row, t.col)] + ys[t.harmonic] * t.weight;
        }
        m
    }
}
