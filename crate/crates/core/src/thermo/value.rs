use std::fmt;

/// A thermodynamic quantity that may legitimately be infinite or undefined
/// for some states (e.g. the temperature of the maximally mixed state, or
/// of a state orthogonal to the field).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThermoValue {
    Finite(f64),
    PosInfinity,
    NegInfinity,
    Undefined,
}

impl ThermoValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            ThermoValue::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ThermoValue::Finite(_))
    }

    /// Finite and nonzero, i.e. usable as a divisor.
    pub fn is_regular(self) -> bool {
        matches!(self, ThermoValue::Finite(x) if x != 0.0)
    }

    /// Map an `f64` onto the marker set (NaN becomes `Undefined`).
    pub fn from_f64(x: f64) -> Self {
        if x.is_nan() {
            ThermoValue::Undefined
        } else if x == f64::INFINITY {
            ThermoValue::PosInfinity
        } else if x == f64::NEG_INFINITY {
            ThermoValue::NegInfinity
        } else {
            ThermoValue::Finite(x)
        }
    }

    /// IEEE view: ±∞ for infinities and NaN for undefined.
    pub fn to_f64(self) -> f64 {
        match self {
            ThermoValue::Finite(x) => x,
            ThermoValue::PosInfinity => f64::INFINITY,
            ThermoValue::NegInfinity => f64::NEG_INFINITY,
            ThermoValue::Undefined => f64::NAN,
        }
    }
}

impl From<f64> for ThermoValue {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl fmt::Display for ThermoValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThermoValue::Finite(x) => x.fmt(f),
            ThermoValue::PosInfinity => f.write_str("inf"),
            ThermoValue::NegInfinity => f.write_str("-inf"),
            ThermoValue::Undefined => f.write_str("undef"),
        }
    }
}
