use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{check_conductor, two, Coeff};
use crate::error::{Error, Result};

/// An element of `Q(zeta_p)` for an odd prime `p`, stored over the power
/// basis `1, zeta, ..., zeta^(p-2)`.
///
/// The relation `zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))` is applied
/// after every operation that can produce the top power.
#[derive(Clone, Debug, PartialEq)]
pub struct Cyc<T> {
    p: u32,
    coords: Vec<T>,
}

impl<T: Coeff> Cyc<T> {
    pub fn zero(p: u64) -> Result<Self> {
        let p = check_conductor(p)?;
        Ok(Self::zero_unchecked(p))
    }

    pub(crate) fn zero_unchecked(p: u32) -> Self {
        Self {
            p,
            coords: vec![T::zero(); p as usize - 1],
        }
    }

    pub fn one(p: u64) -> Result<Self> {
        Self::from_scalar(p, T::one())
    }

    /// Embeds a scalar of the coefficient field.
    pub fn from_scalar(p: u64, c: T) -> Result<Self> {
        let mut z = Self::zero(p)?;
        z.coords[0] = c;
        Ok(z)
    }

    pub fn from_i64(p: u64, n: i64) -> Result<Self> {
        Self::from_scalar(
            p,
            T::from_i64(n).expect("integer embeds in coefficient field"),
        )
    }

    /// `zeta^j` with `j` taken modulo `p`.
    pub fn root_power(p: u64, j: i64) -> Result<Self> {
        let p = check_conductor(p)?;
        Ok(Self::root_power_unchecked(p, j))
    }

    pub(crate) fn root_power_unchecked(p: u32, j: i64) -> Self {
        let e = j.rem_euclid(p as i64) as usize;
        let mut w = vec![T::zero(); p as usize];
        w[e] = T::one();
        Self::from_full(p, w)
    }

    /// `zeta^j + zeta^(-j)`, the value of a two-dimensional dihedral character.
    pub fn two_cos(p: u32, j: i64) -> Self {
        Self::root_power_unchecked(p, j) + Self::root_power_unchecked(p, -j)
    }

    /// Builds an element from coordinates over `1, zeta, ..., zeta^(p-1)`
    /// (one more than the basis length) and reduces.
    fn from_full(p: u32, mut w: Vec<T>) -> Self {
        debug_assert_eq!(w.len(), p as usize);
        let top = w.pop().expect("p >= 3");
        if !top.is_zero() {
            for c in w.iter_mut() {
                *c = c.clone() - top.clone();
            }
        }
        Self { p, coords: w }
    }

    /// Builds an element from power-basis coordinates (length `p - 1`).
    pub fn from_coords(p: u64, coords: Vec<T>) -> Result<Self> {
        let p = check_conductor(p)?;
        if coords.len() != p as usize - 1 {
            return Err(Error::DegreeMismatch {
                expected: p as usize - 1,
                got: coords.len(),
            });
        }
        Ok(Self { p, coords })
    }

    pub fn conductor(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The scalar value if this element lies in the prime field.
    pub fn as_scalar(&self) -> Option<T> {
        self.coords[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coords[0].clone())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ConductorMismatch(self.p, other.p))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Self { p: self.p, coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.p as usize;
        let mut w = vec![T::zero(); p];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = (i + j) % p;
                w[e] = w[e].clone() + a.clone() * b.clone();
            }
        }
        Ok(Self::from_full(self.p, w))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            p: self.p,
            coords: self.coords.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Image under the automorphism `zeta -> zeta^k`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let p = self.p as i64;
        let k = k.rem_euclid(p);
        if k == 0 {
            return Err(Error::NotAUnit(k, self.p));
        }
        let mut w = vec![T::zero(); self.p as usize];
        for (e, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = ((e as i64 * k) % p) as usize;
            w[t] = w[t].clone() + c.clone();
        }
        Ok(Self::from_full(self.p, w))
    }

    /// Complex conjugation, `zeta -> zeta^(-1)`.
    pub fn conj(&self) -> Self {
        self.galois(self.p as i64 - 1).expect("p - 1 is a unit")
    }

    /// Trace from `Q(zeta_p)` down to `Q`.
    ///
    /// Every nonzero power of `zeta` has trace `-1` and `1` has trace `p - 1`,
    /// so the trace is read off the coordinates directly.
    pub fn trace_full(&self) -> T {
        let degree = T::from_u32(self.p - 1).expect("small integer");
        let mut t = self.coords[0].clone() * degree;
        for c in &self.coords[1..] {
            t = t - c.clone();
        }
        t
    }

    /// Trace from the real subfield `Q(zeta + zeta^(-1))` down to `Q`.
    pub fn trace_real(&self) -> Result<T> {
        if self.conj() != *self {
            return Err(Error::NotReal(self.to_string()));
        }
        Ok(self.trace_full() / two::<T>())
    }

    /// Indices `k` in `1..p` with `galois(k)` fixing `self`.
    pub fn galois_stabilizer(&self) -> Vec<u32> {
        (1..self.p)
            .filter(|&k| self.galois(k as i64).expect("unit") == *self)
            .collect()
    }
}

impl<T: Coeff> Add for Cyc<T> {
    type Output = Cyc<T>;

    /// Panics on conductor mismatch; use [`Cyc::try_add`] for untrusted input.
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("conductor mismatch")
    }
}

impl<'a, T: Coeff> Add<&'a Cyc<T>> for &'a Cyc<T> {
    type Output = Cyc<T>;
    fn add(self, rhs: Self) -> Cyc<T> {
        self.try_add(rhs).expect("conductor mismatch")
    }
}

impl<T: Coeff> Sub for Cyc<T> {
    type Output = Cyc<T>;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("conductor mismatch")
    }
}

impl<'a, T: Coeff> Sub<&'a Cyc<T>> for &'a Cyc<T> {
    type Output = Cyc<T>;
    fn sub(self, rhs: Self) -> Cyc<T> {
        self.try_sub(rhs).expect("conductor mismatch")
    }
}

impl<T: Coeff> Mul for Cyc<T> {
    type Output = Cyc<T>;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("conductor mismatch")
    }
}

impl<'a, T: Coeff> Mul<&'a Cyc<T>> for &'a Cyc<T> {
    type Output = Cyc<T>;
    fn mul(self, rhs: Self) -> Cyc<T> {
        self.try_mul(rhs).expect("conductor mismatch")
    }
}

impl<T: Coeff> Neg for Cyc<T> {
    type Output = Cyc<T>;
    fn neg(self) -> Self {
        Self {
            p: self.p,
            coords: self.coords.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T: Coeff> fmt::Display for Cyc<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "z")?,
                1 => write!(f, "({c})*z")?,
                _ if c.is_one() => write!(f, "z^{e}")?,
                _ => write!(f, "({c})*z^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{rat, rat_frac};
    use num_rational::BigRational;

    type C = Cyc<BigRational>;

    fn z(p: u64, j: i64) -> C {
        C::root_power(p, j).unwrap()
    }

    fn int(p: u64, n: i64) -> C {
        C::from_i64(p, n).unwrap()
    }

    /// Oracle: sum of all Galois images, independent of the closed form.
    fn trace_by_summation(a: &C) -> BigRational {
        let p = a.conductor() as i64;
        let mut total = C::zero(p as u64).unwrap();
        for k in 1..p {
            total = total + a.galois(k).unwrap();
        }
        total.as_scalar().expect("trace is rational")
    }

    #[test]
    fn root_power_examples() {
        assert_eq!(z(5, 0), int(5, 1));
        assert_eq!(z(5, 5), int(5, 1));
        // x^2 mod 1 + x + x^2 = -1 - x
        let expect = C::from_coords(3, vec![rat(-1), rat(-1)]).unwrap();
        assert_eq!(z(3, 2), expect);
        assert_eq!(z(7, -1), z(7, 6));
    }

    #[test]
    fn rejects_bad_conductors() {
        assert!(matches!(
            C::root_power(4, 1),
            Err(Error::InvalidConductor(4))
        ));
        assert!(C::root_power(2, 1).is_err());
        assert!(C::root_power(15, 1).is_err());
        assert!(C::from_coords(5, vec![rat(1)]).is_err());
    }

    #[test]
    fn mul_examples() {
        for p in [3u64, 5, 7, 11] {
            assert_eq!(z(p, 1) * z(p, p as i64 - 1), int(p, 1));
            let c = z(p, 1) + z(p, -1);
            assert_eq!(c.clone() * int(p, 1), c);
        }
        let a = z(5, 1) + z(5, 4);
        let b = z(5, 2) + z(5, 3);
        assert_eq!(a * b, int(5, -1));
    }

    #[test]
    fn mul_conductor_mismatch() {
        assert_eq!(
            z(5, 1).try_mul(&z(7, 1)),
            Err(Error::ConductorMismatch(5, 7))
        );
        assert!(z(5, 1).try_add(&z(3, 1)).is_err());
    }

    #[test]
    fn galois_examples() {
        let a = z(7, 3) + int(7, 2);
        assert_eq!(a.galois(1).unwrap(), a);
        assert_eq!(z(5, 1).galois(4).unwrap(), z(5, 4));
        let c = z(7, 1) + z(7, 6);
        assert_eq!(c.galois(2).unwrap(), z(7, 2) + z(7, 5));
        assert!(matches!(c.galois(7), Err(Error::NotAUnit(0, 7))));
        assert!(c.galois(0).is_err());
    }

    #[test]
    fn galois_permutes_real_orbit() {
        let p = 11u64;
        let orbit: Vec<C> = (1..=5).map(|j| C::two_cos(11, j)).collect();
        for k in 1..p as i64 {
            let mut images: Vec<usize> = orbit
                .iter()
                .map(|a| {
                    let img = a.galois(k).unwrap();
                    orbit.iter().position(|b| *b == img).expect("orbit closed")
                })
                .collect();
            images.sort();
            assert_eq!(images, vec![0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn trace_examples() {
        assert_eq!(int(5, 1).trace_full(), rat(4));
        for p in [3u64, 5, 7, 11, 13] {
            assert_eq!(z(p, 1).trace_full(), rat(-1));
            assert_eq!(trace_by_summation(&z(p, 1)), rat(-1));
            assert_eq!(C::two_cos(p as u32, 1).trace_real().unwrap(), rat(-1));
        }
        assert_eq!((z(7, 1) + z(7, -1)).trace_full(), rat(-2));
        assert_eq!(int(5, 2).trace_real().unwrap(), rat(4));
        assert!(matches!(z(5, 1).trace_real(), Err(Error::NotReal(_))));
    }

    #[test]
    fn trace_of_powers() {
        for p in [3u64, 5, 7, 11] {
            for j in -15..15i64 {
                let expect = if j.rem_euclid(p as i64) == 0 {
                    rat(p as i64 - 1)
                } else {
                    rat(-1)
                };
                assert_eq!(z(p, j).trace_full(), expect, "p={p} j={j}");
            }
        }
    }

    #[test]
    fn scalars_and_display() {
        let a = C::from_scalar(5, rat_frac(3, 2)).unwrap();
        assert_eq!(a.as_scalar(), Some(rat_frac(3, 2)));
        assert_eq!(z(5, 1).as_scalar(), None);
        assert_eq!(int(5, 0).to_string(), "0");
        assert_eq!((z(5, 1) + z(5, 2)).to_string(), "z + z^2");
    }

    #[test]
    fn stabilizer_of_real_element() {
        assert_eq!(C::two_cos(7, 1).galois_stabilizer(), vec![1, 6]);
        assert_eq!(int(7, 3).galois_stabilizer(), (1..7).collect::<Vec<_>>());
        assert_eq!(z(7, 1).galois_stabilizer(), vec![1]);
    }
}
