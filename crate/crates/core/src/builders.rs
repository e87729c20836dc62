//! Matrix families built directly from their entry formulas, and the
//! triangular factorizations whose products must reproduce them.
//!
//! Builders always evaluate the entry formula; they never multiply the
//! factors out. That keeps factorization checks two-sided instead of
//! tautological.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;

use crate::arithfun::{FunctionKind, FunctionTable};
use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;
use crate::Rat;

/// Buildable matrix families. Tags serialize as `gcd`, `lcm`, `f1`, `f2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFamily {
    /// entry(i,j) = `f((i,j))`
    Gcd,
    /// entry(i,j) = `f([i,j])`
    Lcm,
    /// entry(i,j) = `g([i,j]) · Σ_{k ≤ n/[i,j]} g(k)`
    F1,
    /// entry(i,j) = `Σ_{k≤n} g(k) − g(i)Σ_{l≤n/i} g(l) − g(j)Σ_{l≤n/j} g(l) + g([i,j])Σ_{k≤n/[i,j]} g(k)`
    F2,
}

impl MatrixFamily {
    pub const ALL: [MatrixFamily; 4] = [
        MatrixFamily::Gcd,
        MatrixFamily::Lcm,
        MatrixFamily::F1,
        MatrixFamily::F2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MatrixFamily::Gcd => "gcd",
            MatrixFamily::Lcm => "lcm",
            MatrixFamily::F1 => "f1",
            MatrixFamily::F2 => "f2",
        }
    }
}

impl fmt::Display for MatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatrixFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gcd" => Ok(MatrixFamily::Gcd),
            "lcm" => Ok(MatrixFamily::Lcm),
            "f1" => Ok(MatrixFamily::F1),
            "f2" => Ok(MatrixFamily::F2),
            other => Err(Error::UnknownKind(other.to_string())),
        }
    }
}

/// An ordered factorization left · middle · right, optionally wrapped by a
/// pair of outer diagonal factors. The middle factor is always diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    outer: Option<(ExactMatrix, ExactMatrix)>,
    left: ExactMatrix,
    middle: ExactMatrix,
    right: ExactMatrix,
}

impl Factorization {
    pub fn new(
        left: ExactMatrix,
        middle: ExactMatrix,
        right: ExactMatrix,
        outer: Option<(ExactMatrix, ExactMatrix)>,
    ) -> Result<Self> {
        let n = left.order();
        let mut orders = vec![middle.order(), right.order()];
        if let Some((a, b)) = &outer {
            orders.push(a.order());
            orders.push(b.order());
        }
        if orders.iter().any(|&m| m != n) {
            return Err(Error::FactorOrderMismatch);
        }
        if !middle.is_diagonal() {
            return Err(Error::MiddleNotDiagonal);
        }
        if let Some((a, b)) = &outer {
            if !a.is_diagonal() || !b.is_diagonal() {
                return Err(Error::MiddleNotDiagonal);
            }
        }
        Ok(Factorization {
            outer,
            left,
            middle,
            right,
        })
    }

    pub fn order(&self) -> usize {
        self.left.order()
    }

    pub fn left(&self) -> &ExactMatrix {
        &self.left
    }

    pub fn middle(&self) -> &ExactMatrix {
        &self.middle
    }

    pub fn right(&self) -> &ExactMatrix {
        &self.right
    }

    pub fn outer(&self) -> Option<(&ExactMatrix, &ExactMatrix)> {
        self.outer.as_ref().map(|(a, b)| (a, b))
    }

    /// Multiply the factors out, left to right.
    pub fn product(&self) -> ExactMatrix {
        let chain: Vec<&ExactMatrix> = self.named_factors().into_iter().map(|(_, m)| m).collect();
        let mut acc = chain[0].clone();
        for m in &chain[1..] {
            acc = acc.multiply(m).expect("factor orders were validated");
        }
        acc
    }

    /// Factors in product order with stable names for serialization.
    pub fn named_factors(&self) -> Vec<(&'static str, &ExactMatrix)> {
        match &self.outer {
            Some((a, b)) => vec![
                ("outer_left", a),
                ("left", &self.left),
                ("middle", &self.middle),
                ("right", &self.right),
                ("outer_right", b),
            ],
            None => vec![
                ("left", &self.left),
                ("middle", &self.middle),
                ("right", &self.right),
            ],
        }
    }
}

fn require_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyMatrix)
    } else {
        Ok(())
    }
}

fn require_table(f: &FunctionTable, need: usize) -> Result<()> {
    if f.n_max() < need {
        Err(Error::TableTooShort {
            kind: f.spec().to_string(),
            have: f.n_max(),
            need,
        })
    } else {
        Ok(())
    }
}

fn require_claim(g: &FunctionTable) -> Result<()> {
    if g.claims_totally_multiplicative() {
        Ok(())
    } else {
        Err(Error::NotTotallyMultiplicative {
            kind: g.spec().to_string(),
        })
    }
}

fn lcm(i: usize, j: usize) -> usize {
    i.lcm(&j)
}

/// Symmetric matrix from a formula of (i, j); evaluates the upper triangle
/// and mirrors it.
fn symmetric_from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rat) -> ExactMatrix {
    let mut rows: Vec<Vec<Rat>> = vec![vec![Rat::zero(); n]; n];
    for i in 1..=n {
        for j in i..=n {
            let v = f(i, j);
            rows[i - 1][j - 1] = v.clone();
            rows[j - 1][i - 1] = v;
        }
    }
    ExactMatrix::from_rows(rows).expect("n was validated")
}

/// `[f((i,j))]`: the matrix of f at the gcd of the indices.
pub fn build_gcd_matrix(n: usize, f: &FunctionTable) -> Result<ExactMatrix> {
    require_order(n)?;
    require_table(f, n)?;
    Ok(symmetric_from_fn(n, |i, j| f.value(i.gcd(&j)).clone()))
}

/// `[f([i,j])]`: the matrix of f at the lcm of the indices.
///
/// The lcm of indices ≤ n can reach n(n−1), so sieved tables are extended on
/// demand; user tables that stop short are reported as too short.
pub fn build_lcm_matrix(n: usize, f: &FunctionTable) -> Result<ExactMatrix> {
    require_order(n)?;
    let need = if n == 1 { 1 } else { n * (n - 1) };
    let extended;
    let table = if f.n_max() < need {
        extended = f.extended(need)?;
        &extended
    } else {
        f
    };
    Ok(symmetric_from_fn(n, |i, j| table.value(lcm(i, j)).clone()))
}

/// `f1` family: entry(i,j) = `g([i,j]) · Σ_{k ≤ n/[i,j]} g(k)`, the sum taken
/// as 0 when `[i,j] > n`.
pub fn build_f1_matrix(n: usize, g: &FunctionTable) -> Result<ExactMatrix> {
    require_order(n)?;
    require_claim(g)?;
    require_table(g, n)?;
    let sums = g.prefix_sums();
    Ok(symmetric_from_fn(n, |i, j| {
        let l = lcm(i, j);
        if l > n {
            Rat::zero()
        } else {
            g.value(l) * sums.sum_to(n / l)
        }
    }))
}

/// `f2` family: the inclusion–exclusion complement
/// `Σ_{k≤n} g(k) − g(i)Σ_{l≤n/i} g(l) − g(j)Σ_{l≤n/j} g(l) + g([i,j])Σ_{k≤n/[i,j]} g(k)`.
/// Row 1 and column 1 are identically zero.
pub fn build_f2_matrix(n: usize, g: &FunctionTable) -> Result<ExactMatrix> {
    require_order(n)?;
    require_claim(g)?;
    require_table(g, n)?;
    let sums = g.prefix_sums();
    Ok(symmetric_from_fn(n, |i, j| {
        let l = lcm(i, j);
        let mut v = sums.sum_to(n).clone();
        v -= g.value(i) * sums.sum_to(n / i);
        v -= g.value(j) * sums.sum_to(n / j);
        if l <= n {
            v += g.value(l) * sums.sum_to(n / l);
        }
        v
    }))
}

fn diag_of_g(n: usize, g: &FunctionTable) -> ExactMatrix {
    ExactMatrix::diagonal(&g.values()[..n]).expect("n ≥ 1 was validated")
}

/// Factorization Cᵀ · diag(g(1..n)) · C of the f1 family.
pub fn build_f1_factorization(n: usize, g: &FunctionTable) -> Result<Factorization> {
    require_order(n)?;
    require_claim(g)?;
    require_table(g, n)?;
    let c = ExactMatrix::divisibility_matrix(n);
    Factorization::new(c.transpose(), diag_of_g(n, g), c, None)
}

/// Factorization Dᵀ · diag(g(1..n)) · D of the f2 family.
pub fn build_f2_factorization(n: usize, g: &FunctionTable) -> Result<Factorization> {
    require_order(n)?;
    require_claim(g)?;
    require_table(g, n)?;
    let d = ExactMatrix::nondivisibility_matrix(n);
    Factorization::new(d.transpose(), diag_of_g(n, g), d, None)
}

/// Structure of the bare lcm matrix:
/// diag(1..n) · C · diag(smith_g(1..n)) · Cᵀ · diag(1..n).
///
/// The textbook statement uses a factor with entries √g(j), which is
/// irrational or imaginary (g(2) = −1/2); folding the square roots together
/// keeps the factorization inside the rationals without changing the product.
pub fn build_lcm_structure_product(n: usize) -> Result<Factorization> {
    require_order(n)?;
    let smith = FunctionTable::build(FunctionKind::SmithG, n, None)?;
    let id = FunctionTable::build(FunctionKind::Id, n, None)?;
    let c = ExactMatrix::divisibility_matrix(n);
    let outer = diag_of_g(n, &id);
    Factorization::new(
        c.clone(),
        diag_of_g(n, &smith),
        c.transpose(),
        Some((outer.clone(), outer)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithfun::FunctionSpec;
    use num_bigint::BigInt;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    fn int_matrix(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn table(kind: FunctionKind, n: usize) -> FunctionTable {
        FunctionTable::build(kind, n, None).unwrap()
    }

    #[test]
    fn gcd_matrix_examples() {
        assert_eq!(
            build_gcd_matrix(3, &table(FunctionKind::Id, 3)).unwrap(),
            int_matrix(&[&[1, 1, 1], &[1, 2, 1], &[1, 1, 3]])
        );
        assert_eq!(
            build_gcd_matrix(1, &table(FunctionKind::One, 1)).unwrap(),
            int_matrix(&[&[1]])
        );
        assert!(matches!(
            build_gcd_matrix(5, &table(FunctionKind::Id, 3)),
            Err(Error::TableTooShort { .. })
        ));
        assert!(matches!(
            build_gcd_matrix(0, &table(FunctionKind::Id, 3)),
            Err(Error::EmptyMatrix)
        ));
    }

    #[test]
    fn lcm_matrix_examples() {
        assert_eq!(
            build_lcm_matrix(2, &table(FunctionKind::Id, 2)).unwrap(),
            int_matrix(&[&[1, 2], &[2, 2]])
        );
        assert_eq!(
            build_lcm_matrix(1, &table(FunctionKind::Id, 1)).unwrap(),
            int_matrix(&[&[1]])
        );
        // sieved tables extend on demand: entry (3,4) needs f(12)
        let m = build_lcm_matrix(4, &table(FunctionKind::Id, 4)).unwrap();
        assert_eq!(*m.entry(3, 4), rat(12, 1));
        // user tables cannot extend
        let spec: FunctionSpec = "user:2=1,3=1".parse().unwrap();
        let user = FunctionTable::from_spec(&spec, 3).unwrap();
        assert!(matches!(
            build_lcm_matrix(3, &user),
            Err(Error::TableTooShort { .. })
        ));
    }

    #[test]
    fn f1_matrix_examples() {
        assert_eq!(
            build_f1_matrix(3, &table(FunctionKind::One, 3)).unwrap(),
            int_matrix(&[&[3, 1, 1], &[1, 1, 0], &[1, 0, 1]])
        );
        assert_eq!(
            build_f1_matrix(3, &table(FunctionKind::Id, 3)).unwrap(),
            int_matrix(&[&[6, 2, 3], &[2, 2, 0], &[3, 0, 3]])
        );
        assert_eq!(
            build_f1_matrix(1, &table(FunctionKind::Liouville, 1)).unwrap(),
            int_matrix(&[&[1]])
        );
        assert!(matches!(
            build_f1_matrix(4, &table(FunctionKind::Phi, 4)),
            Err(Error::NotTotallyMultiplicative { .. })
        ));
    }

    #[test]
    fn f2_matrix_examples() {
        assert_eq!(
            build_f2_matrix(4, &table(FunctionKind::One, 4)).unwrap(),
            int_matrix(&[
                &[0, 0, 0, 0],
                &[0, 2, 1, 2],
                &[0, 1, 3, 2],
                &[0, 2, 2, 3],
            ])
        );
        let m = build_f2_matrix(4, &table(FunctionKind::One, 4)).unwrap();
        assert_eq!(*m.entry(2, 3), rat(1, 1));
        // row 1 and column 1 vanish for any admissible g
        for kind in [FunctionKind::One, FunctionKind::Id, FunctionKind::Liouville] {
            let m = build_f2_matrix(3, &table(kind, 3)).unwrap();
            for j in 1..=3 {
                assert!(m.entry(1, j).is_zero());
                assert!(m.entry(j, 1).is_zero());
            }
        }
    }

    #[test]
    fn f1_factorization_product_small() {
        let f = build_f1_factorization(2, &table(FunctionKind::One, 2)).unwrap();
        assert_eq!(f.product(), int_matrix(&[&[2, 1], &[1, 1]]));
        assert_eq!(
            f.named_factors().iter().map(|(n, _)| *n).collect::<Vec<_>>(),
            vec!["left", "middle", "right"]
        );
    }

    #[test]
    fn f1_factorization_matches_divisor_sum_oracle() {
        // entry(i,j) of the product must be Σ_{k ≤ 4, i|k, j|k} k
        let g = table(FunctionKind::Id, 4);
        let product = build_f1_factorization(4, &g).unwrap().product();
        let built = build_f1_matrix(4, &g).unwrap();
        for i in 1..=4usize {
            for j in 1..=4usize {
                let direct: i64 = (1..=4i64).filter(|k| k % i as i64 == 0 && k % j as i64 == 0).sum();
                assert_eq!(*product.entry(i, j), rat(direct, 1));
                assert_eq!(*built.entry(i, j), rat(direct, 1));
            }
        }
    }

    #[test]
    fn f2_factorization_matches_signed_count() {
        let g = table(FunctionKind::Liouville, 3);
        let product = build_f2_factorization(3, &g).unwrap().product();
        let built = build_f2_matrix(3, &g).unwrap();
        assert!(product.entrywise_equal(&built).unwrap());
        for i in 1..=3usize {
            for j in 1..=3usize {
                let direct: Rat = (1..=3usize)
                    .filter(|k| k % i != 0 && k % j != 0)
                    .map(|k| g.value(k).clone())
                    .sum();
                assert_eq!(*product.entry(i, j), direct);
            }
        }
    }

    #[test]
    fn lcm_structure_examples() {
        let f = build_lcm_structure_product(2).unwrap();
        assert_eq!(f.product(), int_matrix(&[&[1, 2], &[2, 2]]));
        assert_eq!(
            f.named_factors().iter().map(|(n, _)| *n).collect::<Vec<_>>(),
            vec!["outer_left", "left", "middle", "right", "outer_right"]
        );

        let f = build_lcm_structure_product(3).unwrap();
        assert_eq!(*f.product().entry(2, 3), rat(6, 1));

        let f = build_lcm_structure_product(1).unwrap();
        assert_eq!(f.product(), int_matrix(&[&[1]]));
    }

    #[test]
    fn families_are_symmetric() {
        let id = table(FunctionKind::Id, 12);
        let one = table(FunctionKind::One, 12);
        assert!(build_gcd_matrix(12, &id).unwrap().is_symmetric());
        assert!(build_lcm_matrix(12, &id).unwrap().is_symmetric());
        assert!(build_f1_matrix(12, &one).unwrap().is_symmetric());
        assert!(build_f2_matrix(12, &one).unwrap().is_symmetric());
    }

    #[test]
    fn factorization_invariants() {
        let c = ExactMatrix::divisibility_matrix(3);
        let not_diag = ExactMatrix::divisibility_matrix(3);
        assert!(matches!(
            Factorization::new(c.clone(), not_diag, c.clone(), None),
            Err(Error::MiddleNotDiagonal)
        ));
        let small = ExactMatrix::identity(2);
        assert!(matches!(
            Factorization::new(c.clone(), small, c, None),
            Err(Error::FactorOrderMismatch)
        ));
    }

    #[test]
    fn family_tags_round_trip() {
        for fam in MatrixFamily::ALL {
            assert_eq!(fam.as_str().parse::<MatrixFamily>().unwrap(), fam);
        }
        assert!("f3".parse::<MatrixFamily>().is_err());
        assert!(MatrixFamily::F1.to_string() == "f1");
    }

    #[test]
    fn one_is_totally_multiplicative_claim_honored() {
        // one(1) = 1 and the claim flag holds for every claiming preset
        for kind in [FunctionKind::One, FunctionKind::Id, FunctionKind::Liouville] {
            let t = table(kind, 8);
            assert!(t.claims_totally_multiplicative());
            assert!(t.value(1).is_one());
        }
    }
}
