//! Short Weierstrass curves `y^2 = x^3 + a x + b` over `Q` with the exact
//! chord-tangent group law, plus point counting over `F_p` by enumeration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::modmath::is_prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurve {
    a: BigInt,
    b: BigInt,
}

/// A rational point: affine coordinates or the group identity at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EcPoint {
    Infinity,
    Affine(BigRational, BigRational),
}

impl EcPoint {
    pub fn affine(x: i64, y: i64) -> Self {
        EcPoint::Affine(
            BigRational::from(BigInt::from(x)),
            BigRational::from(BigInt::from(y)),
        )
    }
}

impl EllipticCurve {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        let curve = EllipticCurve {
            a: BigInt::from(a),
            b: BigInt::from(b),
        };
        if curve.discriminant().is_zero() {
            return Err(Error::InvalidParameter(format!(
                "y^2 = x^3 + {a}x + {b} is singular (zero discriminant)"
            )));
        }
        Ok(curve)
    }

    /// `-16 (4a^3 + 27b^2)`.
    pub fn discriminant(&self) -> BigInt {
        BigInt::from(-16) * (BigInt::from(4) * self.a.pow(3) + BigInt::from(27) * self.b.pow(2))
    }

    pub fn contains(&self, point: &EcPoint) -> bool {
        match point {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, y) => {
                let a = BigRational::from(self.a.clone());
                let b = BigRational::from(self.b.clone());
                y * y == x * x * x + a * x + b
            }
        }
    }

    fn require_on_curve(&self, point: &EcPoint) -> Result<()> {
        if !self.contains(point) {
            return Err(Error::Domain("point is not on the curve".into()));
        }
        Ok(())
    }

    pub fn negate(&self, point: &EcPoint) -> EcPoint {
        match point {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(x.clone(), -y),
        }
    }

    /// Chord-tangent addition. Both arguments must lie on the curve.
    pub fn add(&self, p: &EcPoint, q: &EcPoint) -> Result<EcPoint> {
        self.require_on_curve(p)?;
        self.require_on_curve(q)?;
        let (x1, y1) = match p {
            EcPoint::Infinity => return Ok(q.clone()),
            EcPoint::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            EcPoint::Infinity => return Ok(p.clone()),
            EcPoint::Affine(x, y) => (x, y),
        };
        let slope = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return Ok(EcPoint::Infinity);
            }
            // Tangent line at a point with y != 0.
            let three = BigRational::from(BigInt::from(3));
            let two = BigRational::from(BigInt::from(2));
            (three * x1 * x1 + BigRational::from(self.a.clone())) / (two * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &slope * &slope - x1 - x2;
        let y3 = slope * (x1 - &x3) - y1;
        Ok(EcPoint::Affine(x3, y3))
    }

    /// Smallest `n <= cutoff` with `n P = O`, or `None` past the cutoff.
    pub fn order_of_point(&self, point: &EcPoint, cutoff: u64) -> Result<Option<u64>> {
        self.require_on_curve(point)?;
        let mut acc = point.clone();
        for n in 1..=cutoff {
            if acc == EcPoint::Infinity {
                return Ok(Some(n));
            }
            acc = self.add(&acc, point)?;
        }
        Ok(None)
    }

    /// `#E(F_p)` including the point at infinity, by scanning all residues.
    /// Requires good reduction: `p` odd and coprime to the discriminant.
    pub fn count_points_mod_p(&self, p: u64) -> Result<u64> {
        if !is_prime(p) || p < 3 {
            return Err(Error::InvalidParameter(format!(
                "p = {p} must be an odd prime >= 3"
            )));
        }
        if (self.discriminant() % BigInt::from(p)).is_zero() {
            return Err(Error::Domain(format!(
                "bad reduction at {p}: discriminant vanishes"
            )));
        }
        let reduce = |v: &BigInt| -> u64 {
            let m = BigInt::from(p);
            let mut r = v % &m;
            if r.is_negative() {
                r += &m;
            }
            u64::try_from(r).expect("reduced residue fits u64")
        };
        let a = reduce(&self.a);
        let b = reduce(&self.b);
        // square_counts[r] = #{ y in F_p : y^2 = r }
        let mut square_counts = vec![0u64; p as usize];
        for y in 0..p {
            square_counts[(y * y % p) as usize] += 1;
        }
        let mut count = 1; // infinity
        for x in 0..p {
            let rhs = (x * x % p * x + a * x + b) % p;
            count += square_counts[rhs as usize];
        }
        Ok(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve() -> EllipticCurve {
        EllipticCurve::new(0, 1).unwrap()
    }

    #[test]
    fn rejects_singular_curves() {
        assert!(EllipticCurve::new(0, 0).is_err());
        assert!(EllipticCurve::new(-3, 2).is_err());
    }

    #[test]
    fn two_torsion() {
        // y = 0 forces order 2.
        let p = EcPoint::affine(-1, 0);
        assert_eq!(curve().order_of_point(&p, 10).unwrap(), Some(2));
    }

    #[test]
    fn three_torsion() {
        // Doubling (0, 1) gives (0, -1) = -P, so 3P = O.
        let c = curve();
        let p = EcPoint::affine(0, 1);
        let double = c.add(&p, &p).unwrap();
        assert_eq!(double, EcPoint::affine(0, -1));
        assert_eq!(c.order_of_point(&p, 10).unwrap(), Some(3));
    }

    #[test]
    fn six_torsion() {
        let p = EcPoint::affine(2, 3);
        assert_eq!(curve().order_of_point(&p, 10).unwrap(), Some(6));
    }

    #[test]
    fn cutoff_is_respected() {
        let p = EcPoint::affine(2, 3);
        assert_eq!(curve().order_of_point(&p, 5).unwrap(), None);
    }

    #[test]
    fn rejects_points_off_curve() {
        let p = EcPoint::affine(1, 1);
        assert!(matches!(
            curve().order_of_point(&p, 5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn point_counts() {
        let c = curve();
        assert_eq!(c.count_points_mod_p(5).unwrap(), 6);
        assert_eq!(c.count_points_mod_p(7).unwrap(), 12);
        // Bad reduction at 3: disc = -432 = -16 * 27.
        assert!(matches!(c.count_points_mod_p(3), Err(Error::Domain(_))));
    }

    #[test]
    fn group_axioms_on_sampled_points() {
        let c = curve();
        let pts = [
            EcPoint::Infinity,
            EcPoint::affine(-1, 0),
            EcPoint::affine(0, 1),
            EcPoint::affine(0, -1),
            EcPoint::affine(2, 3),
            EcPoint::affine(2, -3),
        ];
        for p in &pts {
            // Identity and inverse laws.
            assert_eq!(&c.add(p, &EcPoint::Infinity).unwrap(), p);
            assert_eq!(c.add(p, &c.negate(p)).unwrap(), EcPoint::Infinity);
        }
        for p in &pts {
            for q in &pts {
                assert_eq!(c.add(p, q).unwrap(), c.add(q, p).unwrap());
                for r in &pts {
                    let lhs = c.add(&c.add(p, q).unwrap(), r).unwrap();
                    let rhs = c.add(p, &c.add(q, r).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
