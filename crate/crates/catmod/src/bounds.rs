//! Closed-form degree bounds, evaluated in exact rationals.
//!
//! Several formulas carry a `1/2`; each is asserted to land on an integer.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::linalg::Q;

fn pow3(e: u32) -> Q {
    Q::from(BigInt::from(3u8).pow(e))
}

fn q(n: usize) -> Q {
    Q::int(n as i64)
}

fn half() -> Q {
    Q::new(1, 2)
}

fn integral(x: Q, formula: &str) -> Q {
    assert!(x.is_integer(), "{formula} evaluated to the non-integer {x}");
    x
}

fn min(a: &Q, b: &Q) -> Q {
    a.clone().min(b.clone())
}

fn max(xs: impl IntoIterator<Item = Q>) -> Q {
    xs.into_iter().max().expect("nonempty")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Congruence {
    Mcg,
    Aut,
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Congruence::Mcg => "mcg",
            Congruence::Aut => "aut",
        })
    }
}

/// Generation and relation degree of the homology of the level-p subgroups,
/// as modules over SI (mcg) or VIC^± (aut). `rel = None`: no relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenRel {
    pub gen: Q,
    pub rel: Option<Q>,
}

impl fmt::Display for GenRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rel {
            Some(r) => write!(f, "({}, {r})", self.gen),
            None => write!(f, "({}, none)", self.gen),
        }
    }
}

/// `(8)3^e` for mcg, `(13/2)3^e - 1/2` for aut.
fn congruence_term(family: Congruence, e: u32) -> Q {
    match family {
        Congruence::Mcg => &Q::int(8) * &pow3(e),
        Congruence::Aut => integral(&(&Q::new(13, 2) * &pow3(e)) - &half(), "(13/2)3^e - 1/2"),
    }
}

pub fn congruence_bounds(family: Congruence, i: usize) -> GenRel {
    match (family, i) {
        (_, 0) => GenRel { gen: Q::zero(), rel: None },
        (Congruence::Mcg, 1) => GenRel { gen: Q::int(5), rel: Some(Q::int(8)) },
        (Congruence::Aut, 1) => GenRel { gen: Q::int(4), rel: Some(Q::int(6)) },
        _ => {
            let e = 2 * i as u32;
            GenRel { gen: congruence_term(family, e - 3), rel: Some(congruence_term(family, e - 2)) }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Si,
    Vic,
    VicU,
}

/// `Vanishing`: `H_i` of a module with `H_0`, `H_1` vanishing above `d`, `r`
/// vanishes above the bound (`i >= 2`). `Resolution`: generation degree of
/// the `k`-th term of an induced resolution (`k >= 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SyzygyForm {
    Vanishing,
    Resolution,
}

pub fn syzygy_bound(flavor: Flavor, form: SyzygyForm, index: usize, d: usize, r: usize) -> Result<Q> {
    let m = q(d.max(r));
    match form {
        SyzygyForm::Vanishing => {
            if index < 2 {
                return invalid("the vanishing bound is stated for i >= 2");
            }
            let p = pow3(index as u32 - 1);
            Ok(match flavor {
                Flavor::Si | Flavor::Vic => &p * &m,
                Flavor::VicU => integral(&(&p * &(&m + &half())) - &half(), "3^(i-1)(max(r,d) + 1/2) - 1/2"),
            })
        }
        SyzygyForm::Resolution => Ok(match (flavor, index) {
            (_, 0) => q(d),
            (Flavor::Si | Flavor::Vic, k) => &pow3(k as u32 - 1) * &q(r),
            (Flavor::VicU, 1) => q(r),
            (Flavor::VicU, k) => {
                let p = pow3(k as u32 - 2);
                let tail = &(&pow3(k as u32 - 1) - &Q::one()) * &half();
                integral(&(&(&(&Q::int(2) * &p) * &m) + &(&p * &q(r))) + &tail, "(2)3^(k-2)max(r,d) + 3^(k-2)r + (3^(k-1)-1)/2")
            }
        }),
    }
}

/// Simplified twisted stability range: `d + r`, then `17 + d + r` (mcg) or
/// `12 + d + r` (aut), then `1 + (8)3^(2i-2) + 2d + 2r` (mcg) or
/// `(13/2)3^(2i-2) - 1/2 + 2d + 2r` (aut).
pub fn twisted_range(family: Congruence, i: usize, d: usize, r: usize) -> Q {
    let (d, r) = (q(d), q(r));
    match (family, i) {
        (_, 0) => &d + &r,
        (Congruence::Mcg, 1) => &(&Q::int(17) + &d) + &r,
        (Congruence::Aut, 1) => &(&Q::int(12) + &d) + &r,
        (Congruence::Mcg, _) => &(&(&Q::one() + &congruence_term(family, 2 * i as u32 - 2)) + &(&Q::int(2) * &d)) + &(&Q::int(2) * &r),
        (Congruence::Aut, _) => &(&congruence_term(family, 2 * i as u32 - 2) + &(&Q::int(2) * &d)) + &(&Q::int(2) * &r),
    }
}

/// `c + d + min(c, d)`.
fn tri(c: &Q, d: &Q) -> Q {
    &(c + d) + &min(c, d)
}

/// The unsimplified range, a maximum of terms with `min(...)` corrections.
pub fn twisted_max_form(family: Congruence, i: usize, d: usize, r: usize) -> Q {
    let (d, r) = (q(d), q(r));
    match (family, i) {
        (_, 0) => d.max(r),
        (Congruence::Mcg, 1) => max([
            &(&Q::int(9) + &d) + &min(&Q::int(8), &d),
            &(&Q::int(6) + &r) + &min(&Q::int(5), &r),
            &(&Q::int(9) + &d) + &min(&Q::int(5), &d),
        ]),
        (Congruence::Aut, 1) => max([tri(&Q::int(6), &d), tri(&Q::int(4), &r)]),
        (Congruence::Mcg, _) => {
            let a = congruence_term(family, 2 * i as u32 - 2);
            let b = congruence_term(family, 2 * i as u32 - 3);
            max([&(&(&a + &Q::one()) + &d) + &min(&a, &d), &(&(&b + &Q::one()) + &r) + &min(&b, &r)])
        }
        (Congruence::Aut, _) => {
            let a = congruence_term(family, 2 * i as u32 - 2);
            let b = congruence_term(family, 2 * i as u32 - 3);
            max([tri(&a, &d), tri(&b, &r)])
        }
    }
}

/// One line of the bounds table.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub family: String,
    pub i: usize,
    pub d: Option<usize>,
    pub r: Option<usize>,
    pub bound: String,
    pub formula_id: String,
}

fn row(family: &str, i: usize, d: Option<usize>, r: Option<usize>, bound: String, formula_id: &str) -> BoundRow {
    BoundRow { family: family.into(), i, d, r, bound, formula_id: formula_id.into() }
}

/// Every family for indices `i <= i_max` and `d, r <= dr_max`.
pub fn bounds_table(i_max: usize, dr_max: usize) -> Vec<BoundRow> {
    let mut rows = Vec::new();
    for i in 0..=i_max {
        for family in [Congruence::Mcg, Congruence::Aut] {
            let b = congruence_bounds(family, i);
            rows.push(row(&family.to_string(), i, None, None, b.gen.to_string(), &format!("{family}-gen")));
            let rel = b.rel.map_or("none".into(), |x| x.to_string());
            rows.push(row(&family.to_string(), i, None, None, rel, &format!("{family}-rel")));
        }
    }
    for i in 0..=i_max {
        for d in 0..=dr_max {
            for r in 0..=dr_max {
                for (flavor, name) in [(Flavor::Si, "si_syzygy"), (Flavor::Vic, "vic_syzygy"), (Flavor::VicU, "vicU_syzygy")] {
                    if i >= 2 {
                        let v = syzygy_bound(flavor, SyzygyForm::Vanishing, i, d, r).expect("i >= 2");
                        rows.push(row(name, i, Some(d), Some(r), v.to_string(), &format!("{name}-vanishing")));
                    }
                    let v = syzygy_bound(flavor, SyzygyForm::Resolution, i, d, r).expect("valid");
                    rows.push(row(name, i, Some(d), Some(r), v.to_string(), &format!("{name}-resolution")));
                }
                for (family, name) in [(Congruence::Mcg, "twisted_mcg"), (Congruence::Aut, "twisted_aut")] {
                    rows.push(row(name, i, Some(d), Some(r), twisted_range(family, i, d, r).to_string(), &format!("{name}-simplified")));
                    rows.push(row(name, i, Some(d), Some(r), twisted_max_form(family, i, d, r).to_string(), &format!("{name}-max")));
                }
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_values() {
        assert_eq!(congruence_bounds(Congruence::Mcg, 1).to_string(), "(5, 8)");
        assert_eq!(congruence_bounds(Congruence::Aut, 1).to_string(), "(4, 6)");
        assert_eq!(congruence_bounds(Congruence::Mcg, 2).to_string(), "(24, 72)");
        assert_eq!(congruence_bounds(Congruence::Aut, 2).to_string(), "(19, 58)");
        assert_eq!(congruence_bounds(Congruence::Mcg, 0).to_string(), "(0, none)");
        assert_eq!(twisted_range(Congruence::Mcg, 1, 0, 0), Q::int(17));
        assert_eq!(twisted_range(Congruence::Aut, 1, 0, 0), Q::int(12));
        assert_eq!(twisted_range(Congruence::Mcg, 2, 0, 0), Q::int(73));
        assert_eq!(twisted_range(Congruence::Mcg, 0, 2, 3), Q::int(5));
        assert_eq!(twisted_max_form(Congruence::Mcg, 0, 2, 3), Q::int(3));
    }

    #[test]
    fn syzygy_examples() {
        assert_eq!(syzygy_bound(Flavor::Si, SyzygyForm::Vanishing, 2, 1, 1).unwrap(), Q::int(3));
        assert_eq!(syzygy_bound(Flavor::VicU, SyzygyForm::Vanishing, 2, 1, 1).unwrap(), Q::int(4));
        assert_eq!(syzygy_bound(Flavor::VicU, SyzygyForm::Resolution, 2, 1, 1).unwrap(), Q::int(4));
        assert_eq!(syzygy_bound(Flavor::Si, SyzygyForm::Resolution, 3, 0, 2).unwrap(), Q::int(18));
        assert!(syzygy_bound(Flavor::Si, SyzygyForm::Vanishing, 1, 1, 1).is_err());
    }

    #[test]
    fn integral_and_dominated() {
        for i in 0..=6 {
            for family in [Congruence::Mcg, Congruence::Aut] {
                let b = congruence_bounds(family, i);
                assert!(b.gen.is_integer());
                for d in 0..=10 {
                    for r in 0..=10 {
                        let s = twisted_range(family, i, d, r);
                        assert!(s.is_integer());
                        assert!(s >= twisted_max_form(family, i, d, r), "{family} i={i} d={d} r={r}");
                        assert!(twisted_range(family, i, d + 1, r) >= s && twisted_range(family, i, d, r + 1) >= s);
                        assert!(twisted_max_form(family, i, d + 1, r) >= twisted_max_form(family, i, d, r));
                    }
                }
            }
            for flavor in [Flavor::Si, Flavor::Vic, Flavor::VicU] {
                for d in 0..=10 {
                    for r in 0..=10 {
                        let v = syzygy_bound(flavor, SyzygyForm::Resolution, i, d, r).unwrap();
                        assert!(v.is_integer());
                        assert!(syzygy_bound(flavor, SyzygyForm::Resolution, i, d + 1, r + 1).unwrap() >= v);
                    }
                }
            }
        }
        assert!(!bounds_table(2, 1).is_empty());
    }
}
