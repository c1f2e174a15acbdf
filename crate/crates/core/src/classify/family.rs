use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Mon,
    Fin,
    Nil,
    Comb,
    Def,
    Sydef,
    Suf,
    Ord,
    Comm,
    Circ,
    Nc,
    Sf,
    Ps,
    Uf,
    Star,
    Lcom,
    Rcom,
    TwoCom,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown language family {0:?}")]
pub struct UnknownFamily(pub String);

impl Family {
    pub const ALL: &'static [Family] = &[
        Family::Mon,
        Family::Fin,
        Family::Nil,
        Family::Comb,
        Family::Def,
        Family::Sydef,
        Family::Suf,
        Family::Ord,
        Family::Comm,
        Family::Circ,
        Family::Nc,
        Family::Sf,
        Family::Ps,
        Family::Uf,
        Family::Star,
        Family::Lcom,
        Family::Rcom,
        Family::TwoCom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Mon => "MON",
            Family::Fin => "FIN",
            Family::Nil => "NIL",
            Family::Comb => "COMB",
            Family::Def => "DEF",
            Family::Sydef => "SYDEF",
            Family::Suf => "SUF",
            Family::Ord => "ORD",
            Family::Comm => "COMM",
            Family::Circ => "CIRC",
            Family::Nc => "NC",
            Family::Sf => "SF",
            Family::Ps => "PS",
            Family::Uf => "UF",
            Family::Star => "STAR",
            Family::Lcom => "LCOM",
            Family::Rcom => "RCOM",
            Family::TwoCom => "2COM",
        }
    }

    /// Families whose deciders may answer `Unknown`.
    pub fn may_be_unknown(self) -> bool {
        matches!(
            self,
            Family::Sydef | Family::TwoCom | Family::Uf | Family::Ord
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let up = s.trim().to_ascii_uppercase();
        if up == "TWOCOM" {
            return Ok(Family::TwoCom);
        }
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == up)
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for &f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!("twocom".parse::<Family>().unwrap(), Family::TwoCom);
        assert!("REG".parse::<Family>().is_err());
    }
}
