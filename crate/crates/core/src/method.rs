use crate::Error;
use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

/// The sixteen rank estimators handled by this crate.
///
/// The first nine are information-criterion methods (they minimize a
/// penalized criterion over candidate ranks and are covered by the gap
/// analyzer); the rest are comparison methods based on bulk-edge
/// estimation or eigenvalue gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Aic,
    Bic,
    Gic,
    Pc1,
    Pc2,
    Pc3,
    Ic1,
    Ic2,
    Ic3,
    Act,
    Dpa,
    Bema,
    Ed,
    On,
    Er,
    Gr,
}

impl Method {
    pub const ALL: [Method; 16] = [
        Method::Aic,
        Method::Bic,
        Method::Gic,
        Method::Pc1,
        Method::Pc2,
        Method::Pc3,
        Method::Ic1,
        Method::Ic2,
        Method::Ic3,
        Method::Act,
        Method::Dpa,
        Method::Bema,
        Method::Ed,
        Method::On,
        Method::Er,
        Method::Gr,
    ];

    /// The nine information-criterion methods, in table order.
    pub const CRITERIA: [Method; 9] = [
        Method::Aic,
        Method::Bic,
        Method::Gic,
        Method::Pc1,
        Method::Ic1,
        Method::Pc2,
        Method::Ic2,
        Method::Pc3,
        Method::Ic3,
    ];

    /// True for the nine information-criterion methods.
    pub fn is_criterion(self) -> bool {
        matches!(
            self,
            Method::Aic
                | Method::Bic
                | Method::Gic
                | Method::Pc1
                | Method::Pc2
                | Method::Pc3
                | Method::Ic1
                | Method::Ic2
                | Method::Ic3
        )
    }

    /// True when the estimate depends only on the covariance spectrum
    /// (as opposed to needing the data matrix, its diagonal, or the
    /// correlation spectrum).
    pub fn spectrum_only(self) -> bool {
        !matches!(self, Method::Act | Method::Dpa)
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Aic => "aic",
            Method::Bic => "bic",
            Method::Gic => "gic",
            Method::Pc1 => "pc1",
            Method::Pc2 => "pc2",
            Method::Pc3 => "pc3",
            Method::Ic1 => "ic1",
            Method::Ic2 => "ic2",
            Method::Ic3 => "ic3",
            Method::Act => "act",
            Method::Dpa => "dpa",
            Method::Bema => "bema",
            Method::Ed => "ed",
            Method::On => "on",
            Method::Er => "er",
            Method::Gr => "gr",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let lower = s.trim().to_lowercase();
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.name() == lower)
            .ok_or_else(|| Error::UnsupportedMethod(s.to_string()))
    }
}
