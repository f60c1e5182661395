//! Generalized Cartan matrices, Coxeter matrices, and the translation between them.

use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Bond label m[i][j] of a Coxeter matrix; `Inf` encodes m = infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bond {
    Finite(u32),
    Inf,
}

impl Bond {
    pub fn finite(self) -> Option<u32> {
        match self {
            Bond::Finite(m) => Some(m),
            Bond::Inf => None,
        }
    }
}

impl Serialize for Bond {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bond::Finite(m) => s.serialize_u32(*m),
            Bond::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Bond {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(m) => Ok(Bond::Finite(m.try_into().map_err(|_| {
                D::Error::custom("Coxeter entry out of range")
            })?)),
            Raw::Text(t) if t == "inf" => Ok(Bond::Inf),
            Raw::Text(t) => Err(D::Error::custom(format!(
                "expected integer or \"inf\", got {t:?}"
            ))),
        }
    }
}

/// Symmetric Coxeter matrix: m[i][i] = 1, off-diagonal entries in {2,3,...} or Inf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterMatrix {
    pub n: usize,
    pub m: Vec<Vec<Bond>>,
}

impl CoxeterMatrix {
    pub fn new(m: Vec<Vec<Bond>>) -> Result<Self> {
        let n = m.len();
        if n == 0 {
            return Err(Error::InvalidCoxeter("rank must be at least 1".into()));
        }
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCoxeter(format!(
                    "row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            for (j, &b) in row.iter().enumerate() {
                if i == j {
                    if b != Bond::Finite(1) {
                        return Err(Error::InvalidCoxeter(format!(
                            "diagonal entry m[{0}][{0}] must be 1",
                            i + 1
                        )));
                    }
                } else {
                    if let Bond::Finite(v) = b {
                        if v < 2 {
                            return Err(Error::InvalidCoxeter(format!(
                                "off-diagonal entry m[{}][{}] must be >= 2 or inf",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                    if b != m[j][i] {
                        return Err(Error::InvalidCoxeter(format!(
                            "matrix not symmetric at ({},{})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(CoxeterMatrix { n, m })
    }

    /// Convenience constructor from raw entries, 0 meaning infinity.
    pub fn from_ints(rows: &[&[u32]]) -> Result<Self> {
        let m = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| if v == 0 { Bond::Inf } else { Bond::Finite(v) })
                    .collect()
            })
            .collect();
        Self::new(m)
    }

    /// Bond between generators i and j (1-based).
    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.m[i - 1][j - 1]
    }

    pub fn check_validated(&self) -> Result<()> {
        Self::new(self.m.clone()).map(|_| ())
    }
}

/// Generalized Cartan matrix: a[i][i] = 2, a[i][j] <= 0 off-diagonal,
/// a[i][j] = 0 iff a[j][i] = 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneralizedCartanMatrix {
    pub n: usize,
    pub a: Vec<Vec<i64>>,
}

impl GeneralizedCartanMatrix {
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::InvalidCartan("rank must be at least 1".into()));
        }
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan(format!(
                    "row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j {
                    if v != 2 {
                        return Err(Error::InvalidCartan(format!(
                            "diagonal entry a[{0}][{0}] must be 2",
                            i + 1
                        )));
                    }
                } else {
                    if v > 0 {
                        return Err(Error::InvalidCartan(format!(
                            "off-diagonal entry a[{}][{}] must be <= 0",
                            i + 1,
                            j + 1
                        )));
                    }
                    if (v == 0) != (a[j][i] == 0) {
                        return Err(Error::InvalidCartan(format!(
                            "a[{0}][{1}] = 0 requires a[{1}][{0}] = 0",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(GeneralizedCartanMatrix { n, a })
    }

    /// Entry a[i][j], 1-based.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i - 1][j - 1]
    }
}

/// Coxeter matrix of the Weyl group of a generalized Cartan matrix:
/// m[i][j] = 2, 3, 4, 6, inf according to a[j][i]*a[i][j] = 0, 1, 2, 3, >= 4.
pub fn gcm_to_coxeter(a: &GeneralizedCartanMatrix) -> CoxeterMatrix {
    let n = a.n;
    let mut m = vec![vec![Bond::Finite(1); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let prod = a.a[i][j] * a.a[j][i];
            m[i][j] = match prod {
                0 => Bond::Finite(2),
                1 => Bond::Finite(3),
                2 => Bond::Finite(4),
                3 => Bond::Finite(6),
                _ => Bond::Inf,
            };
        }
    }
    CoxeterMatrix { n, m }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcm_to_coxeter_products() {
        let a = GeneralizedCartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(gcm_to_coxeter(&a).bond(1, 2), Bond::Finite(3));
        let a = GeneralizedCartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert_eq!(gcm_to_coxeter(&a).bond(1, 2), Bond::Inf);
        let a = GeneralizedCartanMatrix::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(gcm_to_coxeter(&a).bond(1, 2), Bond::Finite(2));
        // remaining products
        let a = GeneralizedCartanMatrix::new(vec![vec![2, -1], vec![-2, 2]]).unwrap();
        assert_eq!(gcm_to_coxeter(&a).bond(1, 2), Bond::Finite(4));
        assert_eq!(gcm_to_coxeter(&a).bond(2, 1), Bond::Finite(4));
        let a = GeneralizedCartanMatrix::new(vec![vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(gcm_to_coxeter(&a).bond(1, 2), Bond::Finite(6));
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        assert!(GeneralizedCartanMatrix::new(vec![vec![2, 1], vec![-1, 2]]).is_err());
        assert!(GeneralizedCartanMatrix::new(vec![vec![2, 0], vec![-1, 2]]).is_err());
        assert!(GeneralizedCartanMatrix::new(vec![vec![1, -1], vec![-1, 2]]).is_err());
        assert!(CoxeterMatrix::from_ints(&[&[1, 3], &[4, 1]]).is_err());
        assert!(CoxeterMatrix::from_ints(&[&[1, 1], &[1, 1]]).is_err());
        assert!(CoxeterMatrix::from_ints(&[&[2, 3], &[3, 1]]).is_err());
    }

    #[test]
    fn bond_json_round_trip() {
        let m = CoxeterMatrix::from_ints(&[&[1, 0], &[0, 1]]).unwrap();
        let js = serde_json::to_string(&m).unwrap();
        assert_eq!(js, r#"{"n":2,"m":[[1,"inf"],["inf",1]]}"#);
        let back: CoxeterMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
        let m: CoxeterMatrix = serde_json::from_str(r#"{"n":2,"m":[[1,3],[3,1]]}"#).unwrap();
        assert_eq!(m.bond(1, 2), Bond::Finite(3));
    }
}
