//! Search budgets shared by the builders and the command line.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::oracles::DEFAULT_EP_BUDGET;
use crate::pattern::DEFAULT_PATTERN_BUDGET;
use crate::treewidth::DEFAULT_EXACT_BUDGET;

/// Environment variable overriding [`Budgets`], e.g. `tw=20,pat=12,ep=1000000`.
pub const BUDGETS_ENV: &str = "TREEPART_BUDGETS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Largest graph handed to exact treewidth.
    pub tw: usize,
    /// Largest pattern handed to subgraph search.
    pub pattern: usize,
    /// Node budget of the exact packing search.
    pub ep: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            tw: DEFAULT_EXACT_BUDGET,
            pattern: DEFAULT_PATTERN_BUDGET,
            ep: DEFAULT_EP_BUDGET,
        }
    }
}

impl Budgets {
    /// Defaults overridden by `TREEPART_BUDGETS` when it is set.
    pub fn from_env() -> Result<Budgets> {
        match std::env::var(BUDGETS_ENV) {
            Ok(s) => s.parse(),
            Err(_) => Ok(Budgets::default()),
        }
    }
}

impl FromStr for Budgets {
    type Err = Error;

    /// Comma-separated `key=value` pairs; keys not given keep their defaults.
    fn from_str(s: &str) -> Result<Budgets> {
        let mut b = Budgets::default();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidSpec(format!("budget `{item}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("budget `{item}` needs a number")))?;
            if value == 0 {
                return Err(Error::InvalidSpec(format!(
                    "budget `{item}` must be positive"
                )));
            }
            match key.trim() {
                "tw" => b.tw = value,
                "pat" => b.pattern = value,
                "ep" => b.ep = value,
                other => return Err(Error::InvalidSpec(format!("unknown budget `{other}`"))),
            }
        }
        Ok(b)
    }
}
