use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::PTPresentation;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::permgroup::CosetSpace;
use crate::Rational;

/// Integer matrix of a correspondence on a fiber: column `x` lists the
/// coefficients of the divisor `D(x)`, so `M[x'][x]` is the coefficient of `x'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrMatrix {
    pub labels: Vec<String>,
    pub matrix: Matrix<BigInt>,
}

/// Matrix on the right cosets of `H` (ordered by smallest member):
/// `M[Hg'][Hg] = sum_i coeffs[i] #{j : H g_ij g = H g'}`.
///
/// The multiset `{H g_ij g}_j` is recomputed for every `g` in each coset and
/// must not depend on the choice.
pub fn corr_matrix(pres: &PTPresentation, coeffs: &[BigInt]) -> Result<CorrMatrix> {
    let g = &pres.group;
    let dc = pres.double_cosets();
    if coeffs.len() != dc.len() {
        return Err(Error::DegreeMismatch {
            expected: dc.len(),
            got: coeffs.len(),
        });
    }
    let space = CosetSpace::new(g, &pres.subgroup)?;
    let reps: Vec<Vec<usize>> = dc
        .right_reps
        .iter()
        .map(|rs| rs.iter().map(|r| g.index_of(r).expect("member")).collect())
        .collect();
    let n = space.len();
    let mut m: Matrix<BigInt> = Matrix::zeros(n, n);
    for (c, coset) in space.cosets.iter().enumerate() {
        let column = |x: usize| {
            let mut col = vec![BigInt::zero(); n];
            for (i, rs) in reps.iter().enumerate() {
                for &gij in rs {
                    let target = space.coset_of(g.mul(gij, x));
                    col[target] += &coeffs[i];
                }
            }
            col
        };
        let col = column(coset.rep);
        for &x in &coset.members[1..] {
            if column(x) != col {
                return Err(Error::IllDefinedCorrespondence(format!(
                    "image of coset {} changes between {} and {}",
                    c + 1,
                    g.element(coset.rep),
                    g.element(x)
                )));
            }
        }
        for (r, v) in col.into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    let labels = space
        .cosets
        .iter()
        .map(|c| format!("H{}", g.element(c.rep)))
        .collect();
    Ok(CorrMatrix { labels, matrix: m })
}

/// Combinatorial properties of a correspondence matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixProperties {
    pub effective: bool,
    pub symmetric: bool,
    pub fixed_point_free: bool,
    /// Common value of all row and column sums, if there is one.
    pub degree: Option<BigInt>,
    /// The constant `c` with `M^2 + (q-2)M - (q-1)I = cJ`, if it exists and
    /// agrees with `(r^2 + (q-2)r - (q-1))/N`.
    pub quadratic_certificate: Option<BigInt>,
    /// `(r^2 + (q-2)r - (q-1))/N` when the degree `r` exists.
    pub predicted_certificate: Option<Rational>,
}

pub fn matrix_properties(m: &Matrix<BigInt>, q: &BigInt) -> Result<MatrixProperties> {
    if !m.is_square() {
        return Err(Error::DegreeMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    let n = m.rows();
    let effective = m.all(|x| !x.is_negative());
    let symmetric = m.is_symmetric();
    let fixed_point_free = m.diagonal().iter().all(Zero::is_zero);
    let rows = m.row_sums();
    let cols = m.col_sums();
    let degree =
        (n > 0 && rows.iter().chain(&cols).all(|r| *r == rows[0])).then(|| rows[0].clone());
    let one = BigInt::from(1);
    let two = BigInt::from(2);
    let predicted_certificate = degree.as_ref().map(|r| {
        let num = r * r + (q - &two) * r - (q - &one);
        Rational::new(num, BigInt::from(n))
    });
    let lhs =
        &(&(m * m) + &m.scale(&(q - &two))) - &Matrix::<BigInt>::identity(n).scale(&(q - &one));
    let quadratic_certificate = if n > 0 && lhs.all(|x| x == lhs.get(0, 0)) {
        let c = lhs.get(0, 0).clone();
        predicted_certificate
            .as_ref()
            .filter(|p| **p == Rational::from_integer(c.clone()))
            .map(|_| c)
    } else {
        None
    };
    Ok(MatrixProperties {
        effective,
        symmetric,
        fixed_point_free,
        degree,
        quadratic_certificate,
        predicted_certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows).map(|&x| BigInt::from(x))
    }

    #[test]
    fn identity_certificate() {
        let props = matrix_properties(&Matrix::identity(3), &BigInt::from(1)).unwrap();
        assert!(props.effective && props.symmetric && !props.fixed_point_free);
        assert_eq!(props.degree, Some(BigInt::from(1)));
        assert_eq!(props.quadratic_certificate, Some(BigInt::from(0)));
    }

    #[test]
    fn involution_certificate() {
        let m = big(vec![
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
        ]);
        let props = matrix_properties(&m, &BigInt::from(2)).unwrap();
        assert!(props.fixed_point_free && props.symmetric);
        assert_eq!(props.quadratic_certificate, Some(BigInt::from(0)));
    }

    #[test]
    fn no_certificate() {
        let m = big(vec![vec![1, 2], vec![2, 1]]);
        let props = matrix_properties(&m, &BigInt::from(3)).unwrap();
        assert_eq!(props.degree, Some(BigInt::from(3)));
        assert!(props.quadratic_certificate.is_none());
        let ragged = big(vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(
            matrix_properties(&ragged, &BigInt::from(1)).unwrap().degree,
            None
        );
    }
}
