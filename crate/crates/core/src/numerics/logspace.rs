//! Log-space weights for partition sums that overflow f64 in linear space.
//!
//! Exact zeros are carried as a flag rather than a -inf sentinel so that
//! arithmetic never mixes IEEE infinities into log magnitudes.

/// A non-negative weight stored as a natural-log magnitude plus a zero flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogWeight {
    log: f64,
    zero: bool,
}

impl LogWeight {
    pub const ZERO: LogWeight = LogWeight {
        log: f64::NEG_INFINITY,
        zero: true,
    };
    pub const ONE: LogWeight = LogWeight {
        log: 0.0,
        zero: false,
    };

    pub fn from_ln(log: f64) -> Self {
        LogWeight { log, zero: false }
    }

    pub fn from_value(v: f64) -> Self {
        assert!(v >= 0.0, "LogWeight holds non-negative weights");
        if v == 0.0 {
            LogWeight::ZERO
        } else {
            LogWeight {
                log: v.ln(),
                zero: false,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// Natural log of the weight; -inf for exact zero.
    pub fn ln(&self) -> f64 {
        if self.zero {
            f64::NEG_INFINITY
        } else {
            self.log
        }
    }

    pub fn value(&self) -> f64 {
        if self.zero {
            0.0
        } else {
            self.log.exp()
        }
    }

    pub fn mul(self, other: LogWeight) -> LogWeight {
        if self.zero || other.zero {
            LogWeight::ZERO
        } else {
            LogWeight::from_ln(self.log + other.log)
        }
    }

    pub fn scale_ln(self, dlog: f64) -> LogWeight {
        if self.zero {
            LogWeight::ZERO
        } else {
            LogWeight::from_ln(self.log + dlog)
        }
    }

    pub fn add(self, other: LogWeight) -> LogWeight {
        match (self.zero, other.zero) {
            (true, true) => LogWeight::ZERO,
            (true, false) => other,
            (false, true) => self,
            (false, false) => LogWeight::from_ln(log_add(self.log, other.log)),
        }
    }

    /// Pairwise log-sum-exp over a slice, skipping exact zeros.
    pub fn sum(ws: &[LogWeight]) -> LogWeight {
        let logs: Vec<f64> = ws.iter().filter(|w| !w.zero).map(|w| w.log).collect();
        if logs.is_empty() {
            LogWeight::ZERO
        } else {
            LogWeight::from_ln(log_sum_exp_pairwise(&logs))
        }
    }
}

/// log(e^a + e^b), stable for any ordering of the operands.
pub fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a >= b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

/// Pairwise-summation log-sum-exp; error grows like log2(n) ulps instead of n.
pub fn log_sum_exp_pairwise(logs: &[f64]) -> f64 {
    match logs.len() {
        0 => f64::NEG_INFINITY,
        1 => logs[0],
        2 => log_add(logs[0], logs[1]),
        n => {
            let mid = n / 2;
            log_add(
                log_sum_exp_pairwise(&logs[..mid]),
                log_sum_exp_pairwise(&logs[mid..]),
            )
        }
    }
}
