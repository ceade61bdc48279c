use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// ASM symmetry classes and U-turn variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ClassTag {
    Asm,
    Hts,
    Qts,
    Vs,
    Vhs,
    Ds,
    Das,
    Ts,
    Os,
    Oos,
    Vos,
    Uasm,
    Uuasm,
    Vhpasm,
    Uosasm,
}

impl ClassTag {
    pub const ALL: [ClassTag; 15] = [
        ClassTag::Asm,
        ClassTag::Hts,
        ClassTag::Qts,
        ClassTag::Vs,
        ClassTag::Vhs,
        ClassTag::Ds,
        ClassTag::Das,
        ClassTag::Ts,
        ClassTag::Os,
        ClassTag::Oos,
        ClassTag::Vos,
        ClassTag::Uasm,
        ClassTag::Uuasm,
        ClassTag::Vhpasm,
        ClassTag::Uosasm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Asm => "ASM",
            ClassTag::Hts => "HTS",
            ClassTag::Qts => "QTS",
            ClassTag::Vs => "VS",
            ClassTag::Vhs => "VHS",
            ClassTag::Ds => "DS",
            ClassTag::Das => "DAS",
            ClassTag::Ts => "TS",
            ClassTag::Os => "OS",
            ClassTag::Oos => "OOS",
            ClassTag::Vos => "VOS",
            ClassTag::Uasm => "UASM",
            ClassTag::Uuasm => "UUASM",
            ClassTag::Vhpasm => "VHPASM",
            ClassTag::Uosasm => "UOSASM",
        }
    }

    /// U-turn variants live on rectangular or half-size shapes.
    pub fn is_u_turn(self) -> bool {
        matches!(
            self,
            ClassTag::Uasm | ClassTag::Uuasm | ClassTag::Vhpasm | ClassTag::Uosasm
        )
    }

    /// Checks that the class has matrices of this order in the supported range.
    pub fn check_order(self, order: usize) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidInput(format!("{} of order {order}: {why}", self.name())));
        if order == 0 {
            return bad("order must be positive");
        }
        match self {
            ClassTag::Vos if order % 8 == 5 || order % 8 == 7 => {
                bad("there are no VOSASMs of order 8n+5 or 8n+7")
            }
            ClassTag::Vos if order.is_multiple_of(2) => bad("VOSASMs have odd order 8n+1 or 8n+3"),
            ClassTag::Uasm if !order.is_multiple_of(2) => bad("UASMs have even order 2n"),
            ClassTag::Uuasm if !order.is_multiple_of(4) => bad("UUASMs have order 4n"),
            ClassTag::Vhpasm if order % 4 != 2 => bad("VHPASMs have order 4n+2"),
            ClassTag::Uosasm if !order.is_multiple_of(8) => bad("UOSASMs have order 8n"),
            _ => Ok(()),
        }
    }

    /// Matrix shape `(rows, cols)` used to store members of the given order.
    pub fn shape(self, order: usize) -> Result<(usize, usize)> {
        self.check_order(order)?;
        Ok(match self {
            ClassTag::Uasm => (order, order / 2),
            ClassTag::Uuasm | ClassTag::Uosasm => (order / 2, order / 2),
            ClassTag::Vhpasm => ((order - 2) / 2, (order - 2) / 2),
            _ => (order, order),
        })
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        let key = up.strip_suffix("ASM").filter(|k| !k.is_empty()).unwrap_or(&up);
        Ok(match key {
            "ASM" | "" => ClassTag::Asm,
            "HTS" => ClassTag::Hts,
            "QTS" => ClassTag::Qts,
            "VS" => ClassTag::Vs,
            "VHS" => ClassTag::Vhs,
            "DS" => ClassTag::Ds,
            "DAS" => ClassTag::Das,
            "TS" => ClassTag::Ts,
            "OS" => ClassTag::Os,
            "OOS" => ClassTag::Oos,
            "VOS" => ClassTag::Vos,
            "U" => ClassTag::Uasm,
            "UU" => ClassTag::Uuasm,
            "VHP" => ClassTag::Vhpasm,
            "UOS" => ClassTag::Uosasm,
            _ => return Err(Error::Parse(format!("unknown class {s:?}"))),
        })
    }
}

impl From<ClassTag> for String {
    fn from(c: ClassTag) -> String {
        c.name().to_string()
    }
}

impl TryFrom<String> for ClassTag {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in ClassTag::ALL {
            assert_eq!(c.name().parse::<ClassTag>().unwrap(), c);
        }
        assert_eq!("vs".parse::<ClassTag>().unwrap(), ClassTag::Vs);
        assert_eq!("VSASM".parse::<ClassTag>().unwrap(), ClassTag::Vs);
        assert_eq!("uu".parse::<ClassTag>().unwrap(), ClassTag::Uuasm);
        assert!("XYZ".parse::<ClassTag>().is_err());
    }

    #[test]
    fn orders_and_shapes() {
        assert!(ClassTag::Vos.check_order(13).is_err());
        assert!(ClassTag::Vos.check_order(11).is_ok());
        assert_eq!(ClassTag::Uasm.shape(6).unwrap(), (6, 3));
        assert_eq!(ClassTag::Vhpasm.shape(6).unwrap(), (2, 2));
        assert_eq!(ClassTag::Uosasm.shape(8).unwrap(), (4, 4));
        assert!(ClassTag::Uuasm.shape(6).is_err());
    }
}
