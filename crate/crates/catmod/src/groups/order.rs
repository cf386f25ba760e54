use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::category::{CategoryId, Flavor};

/// `|G_n|`: GL_n^U(F_p) or Sp_2n(F_p).
pub fn group_order(cat: &CategoryId, n: usize) -> BigInt {
    let q = BigInt::from(cat.p);
    match cat.flavor {
        Flavor::Si => {
            let mut o: BigInt = Pow::pow(&q, (n * n) as u32);
            for i in 1..=n {
                o *= Pow::pow(&q, (2 * i) as u32) - 1;
            }
            o
        }
        Flavor::Vic | Flavor::VicU => {
            let gl = gl_order(&q, n);
            if n == 0 {
                return gl;
            }
            let u = cat.units().len();
            gl * BigInt::from(u) / BigInt::from(cat.p - 1)
        }
    }
}

fn gl_order(q: &BigInt, n: usize) -> BigInt {
    let qn: BigInt = Pow::pow(q, n as u32);
    (0..n).fold(BigInt::one(), |acc, i| acc * (&qn - Pow::pow(q, i as u32)))
}

/// `|Hom(k^d, k^n)| = |G_n| / |G_{n-d}|` (zero when d > n).
pub fn predicted_hom_count(cat: &CategoryId, d: usize, n: usize) -> BigInt {
    if d > n {
        return BigInt::zero();
    }
    if cat.flavor == Flavor::VicU && d < n {
        return predicted_hom_count(&cat.vic_base(), d, n);
    }
    group_order(cat, n) / group_order(cat, n - d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        let vic2 = CategoryId::vic(2).unwrap();
        assert_eq!(group_order(&vic2, 0), BigInt::from(1));
        assert_eq!(group_order(&vic2, 2), BigInt::from(6));
        assert_eq!(group_order(&CategoryId::si(2).unwrap(), 1), BigInt::from(6));
        assert_eq!(group_order(&CategoryId::vic_u(3, &[1]).unwrap(), 2), BigInt::from(24));
        assert_eq!(group_order(&CategoryId::vic_u(5, &[1, 4]).unwrap(), 2), BigInt::from(240));
        assert_eq!(group_order(&CategoryId::vic_u(3, &[1]).unwrap(), 0), BigInt::from(1));
    }

    #[test]
    fn hom_counts() {
        let vic2 = CategoryId::vic(2).unwrap();
        assert_eq!(predicted_hom_count(&vic2, 1, 2), BigInt::from(6));
        assert_eq!(predicted_hom_count(&vic2, 3, 2), BigInt::from(0));
        let si2 = CategoryId::si(2).unwrap();
        assert_eq!(predicted_hom_count(&si2, 1, 2), BigInt::from(120));
        assert_eq!(predicted_hom_count(&si2, 1, 4), BigInt::from(32640));
        let u = CategoryId::vic_u(3, &[1]).unwrap();
        assert_eq!(predicted_hom_count(&u, 1, 1), BigInt::from(1));
        assert_eq!(predicted_hom_count(&u, 0, 1), BigInt::from(1));
        assert_eq!(predicted_hom_count(&u, 1, 2), BigInt::from(24));
    }
}
