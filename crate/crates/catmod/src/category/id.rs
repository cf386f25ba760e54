use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::ff::check_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "VIC")]
    Vic,
    #[serde(rename = "VIC_U")]
    VicU,
    #[serde(rename = "SI")]
    Si,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Vic => "VIC",
            Flavor::VicU => "VIC_U",
            Flavor::Si => "SI",
        }
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Flavor> {
        match s.to_ascii_lowercase().as_str() {
            "vic" => Ok(Flavor::Vic),
            "vicu" | "vic_u" => Ok(Flavor::VicU),
            "si" => Ok(Flavor::Si),
            _ => invalid(format!("unknown category {s:?}; expected vic, vicu or si")),
        }
    }
}

/// One of the categories VIC(F_p), VIC^U(F_p), SI(F_p).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CategoryId {
    pub flavor: Flavor,
    pub p: u8,
    /// Sorted unit subgroup; only set for VIC_U.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub unit_group: Option<Vec<u8>>,
}

impl CategoryId {
    pub fn vic(p: u8) -> Result<CategoryId> {
        check_prime(p)?;
        Ok(CategoryId { flavor: Flavor::Vic, p, unit_group: None })
    }

    pub fn si(p: u8) -> Result<CategoryId> {
        check_prime(p)?;
        Ok(CategoryId { flavor: Flavor::Si, p, unit_group: None })
    }

    /// VIC^U; `units` must be a subgroup of F_p^x.
    pub fn vic_u(p: u8, units: &[u8]) -> Result<CategoryId> {
        check_prime(p)?;
        let mut u: Vec<u8> = units.to_vec();
        u.sort_unstable();
        u.dedup();
        if u.iter().any(|&x| x == 0 || x >= p) {
            return invalid(format!("unit group {units:?} has entries outside 1..{}", p - 1));
        }
        if !u.contains(&1) {
            return invalid(format!("unit group {units:?} does not contain 1"));
        }
        for &a in &u {
            for &b in &u {
                if !u.contains(&((a as u32 * b as u32 % p as u32) as u8)) {
                    return invalid(format!("unit group {units:?} is not closed under multiplication mod {p}"));
                }
            }
        }
        Ok(CategoryId { flavor: Flavor::VicU, p, unit_group: Some(u) })
    }

    pub fn new(flavor: Flavor, p: u8, units: Option<&[u8]>) -> Result<CategoryId> {
        match (flavor, units) {
            (Flavor::Vic, _) => CategoryId::vic(p),
            (Flavor::Si, _) => CategoryId::si(p),
            (Flavor::VicU, Some(u)) => CategoryId::vic_u(p, u),
            (Flavor::VicU, None) => invalid("VIC_U needs a unit group"),
        }
    }

    pub fn is_si(&self) -> bool {
        self.flavor == Flavor::Si
    }

    /// Units allowed as determinants of automorphisms (all of F_p^x outside VIC_U).
    pub fn units(&self) -> Vec<u8> {
        match &self.unit_group {
            Some(u) => u.clone(),
            None => (1..self.p).collect(),
        }
    }

    /// The plain VIC category over the same field.
    pub fn vic_base(&self) -> CategoryId {
        CategoryId { flavor: Flavor::Vic, p: self.p, unit_group: None }
    }

    /// Dimension of the underlying vector space of the degree-`n` object.
    pub fn vector_dim(&self, n: usize) -> usize {
        if self.is_si() {
            2 * n
        } else {
            n
        }
    }

    pub fn units_label(&self) -> String {
        match &self.unit_group {
            Some(u) => u.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            None => "-".into(),
        }
    }
}

impl fmt::Display for CategoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.unit_group {
            Some(_) => write!(f, "{}(F{};{})", self.flavor.name(), self.p, self.units_label()),
            None => write!(f, "{}(F{})", self.flavor.name(), self.p),
        }
    }
}

/// Parses a residue list such as `"1,4"`.
pub fn parse_units(s: &str) -> Result<Vec<u8>> {
    s.split(',')
        .map(|t| t.trim().parse::<u8>().map_err(|_| Error::Invalid(format!("bad unit {t:?} in {s:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_groups_validated() {
        assert_eq!(CategoryId::vic_u(5, &[4, 1]).unwrap().unit_group, Some(vec![1, 4]));
        assert!(CategoryId::vic_u(5, &[1, 2]).is_err());
        assert!(CategoryId::vic_u(5, &[4]).is_err());
        assert!(CategoryId::vic_u(3, &[1, 3]).is_err());
        assert!(CategoryId::vic_u(7, &[1, 2, 4]).is_ok());
        assert!(CategoryId::vic(4).is_err());
    }

    #[test]
    fn parses() {
        assert_eq!("VicU".parse::<Flavor>().unwrap(), Flavor::VicU);
        assert!("fi".parse::<Flavor>().is_err());
        assert_eq!(parse_units("1, 4").unwrap(), vec![1, 4]);
        assert!(parse_units("1,x").is_err());
    }
}
