//! Z2-gradings of the basis of C^N.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};
use crate::tensor::{GradedTensorElement, TensorMatrix};

/// Parities `[1], ..., [N]` of the basis vectors. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grading {
    parities: Vec<u8>,
}

impl Grading {
    pub fn new(parities: Vec<u8>) -> Result<Grading> {
        if parities.is_empty() {
            return Err(Error::InvalidGrading("dimension must be positive".into()));
        }
        if let Some(p) = parities.iter().find(|&&p| p > 1) {
            return Err(Error::InvalidGrading(format!("parity {p} is not 0 or 1")));
        }
        Ok(Grading { parities })
    }

    /// The grading with all basis vectors even.
    pub fn even(n: usize) -> Grading {
        Grading {
            parities: vec![0; n.max(1)],
        }
    }

    /// All `2^n` gradings of dimension `n`, in lexicographic order of their strings.
    pub fn all(n: usize) -> Vec<Grading> {
        (0..1u32 << n)
            .map(|bits| Grading {
                parities: (0..n).map(|i| ((bits >> (n - 1 - i)) & 1) as u8).collect(),
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// `[i]` for `1 <= i <= N`.
    pub fn parity(&self, i: usize) -> Result<u8> {
        if i == 0 || i > self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.dim(),
            });
        }
        Ok(self.parities[i - 1])
    }

    // 0-based, unchecked.
    pub(crate) fn p(&self, i: usize) -> u8 {
        self.parities[i]
    }

    /// `(-1)^{[i][j]}` style signs: returns true when the exponent is odd.
    pub(crate) fn odd_pair(&self, i: usize, j: usize) -> bool {
        self.parities[i] & self.parities[j] == 1
    }

    /// Degree of the matrix unit `e_ij` (0-based indices).
    pub(crate) fn unit_degree(&self, i: usize, j: usize) -> u8 {
        self.parities[i] ^ self.parities[j]
    }

    /// True for `0^l 1^(N-2l) 0^l` and for the same pattern with 0 and 1 swapped.
    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..=n / 2).any(|l| {
            let outer = self.parities[0];
            let inner = self.parities[l.min(n - 1)];
            self.parities.iter().enumerate().all(|(k, &p)| {
                if k < l || k >= n - l {
                    p == outer
                } else {
                    p == inner
                }
            })
        })
    }

    /// The graded flip `P(v ⊗ w) = (-1)^{deg v deg w} w ⊗ v` as a flattened matrix.
    pub fn graded_permutation(&self) -> TensorMatrix {
        let n = self.dim();
        let ring = Ring::empty();
        let mut m = TensorMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let sign = if self.odd_pair(i, j) { -1 } else { 1 };
                m.set0((i, j), (j, i), Scalar::from_int(&ring, sign));
            }
        }
        m
    }

    /// The graded flip `P = Σ (-1)^{[j]} e_ij ⊗ e_ji` as an element of End(V) ⊗ End(V).
    pub fn graded_permutation_element(&self) -> GradedTensorElement {
        let n = self.dim();
        let ring = Ring::empty();
        let mut f = GradedTensorElement::zero(n);
        for i in 0..n {
            for j in 0..n {
                let sign = if self.parities[j] == 1 { -1 } else { 1 };
                f.add_term0((i, j), (j, i), &Scalar::from_int(&ring, sign));
            }
        }
        f
    }
}

impl FromStr for Grading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Grading> {
        let parities = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidGrading(format!(
                    "unexpected character `{other}` in `{s}`"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Grading::new(parities)
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.parities {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Grading {
        s.parse().unwrap()
    }

    #[test]
    fn parity_lookup() {
        assert_eq!(g("0110").parity(2), Ok(1));
        assert_eq!(g("00").parity(1), Ok(0));
        assert_eq!(g("1").parity(1), Ok(1));
        assert_eq!(
            g("01").parity(0),
            Err(Error::IndexOutOfRange { index: 0, n: 2 })
        );
        assert_eq!(
            g("01").parity(3),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        );
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(g("0110").to_string(), "0110");
        assert!("".parse::<Grading>().is_err());
        assert!("012".parse::<Grading>().is_err());
        assert_eq!(
            Grading::all(2)
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>(),
            ["00", "01", "10", "11"]
        );
    }

    #[test]
    fn symmetric_patterns() {
        assert!(g("0110").is_symmetric());
        assert!(!g("0101").is_symmetric());
        assert!(g("11").is_symmetric());
        assert!(g("000").is_symmetric());
        assert!(g("1001").is_symmetric());
        assert!(g("00100").is_symmetric());
        assert!(!g("0010").is_symmetric());
        assert!(!g("0011").is_symmetric());
    }

    #[test]
    fn symmetric_matches_brute_force() {
        for n in 1..=6 {
            for gr in Grading::all(n) {
                let mut expected = false;
                for l in 0..=n / 2 {
                    for c in 0..2u8 {
                        let pattern: Vec<u8> = (0..n)
                            .map(|k| if k < l || k >= n - l { c } else { 1 - c })
                            .collect();
                        expected |= pattern == gr.parities;
                    }
                }
                assert_eq!(gr.is_symmetric(), expected, "{gr}");
            }
        }
    }
}
