use clap::{Parser, ValueEnum};
use serde::Serialize;
use weil_core::groups::Fq2;
use weil_core::heis_weil::psi_enum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Weil,
    Branching,
    Howe,
    Pointcount,
    Lusztig,
    All,
}

impl Suite {
    /// Report order for `all`.
    pub const ORDER: [Suite; 5] = [Suite::Weil, Suite::Branching, Suite::Howe, Suite::Pointcount, Suite::Lusztig];

    pub fn expand(self) -> Vec<Suite> {
        if self == Suite::All {
            Suite::ORDER.to_vec()
        } else {
            vec![self]
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Verification runs for Heisenberg-Weil representations, the Howe
/// correspondence and twisted point counts. Every flag can also be set
/// through a WEILCHECK_* environment variable.
#[derive(Clone, Debug, Parser, Serialize)]
#[command(name = "weilcheck", version)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value = "all", env = "WEILCHECK_SUITE")]
    pub suite: Suite,
    #[arg(long, default_value_t = 1, env = "WEILCHECK_N")]
    pub n: usize,
    #[arg(long, default_value_t = 2, env = "WEILCHECK_Q")]
    pub q: u64,
    /// Index of the central character, 1-based among the nontrivial ones.
    #[arg(long, default_value_t = 1, env = "WEILCHECK_PSI")]
    pub psi: usize,
    #[arg(long, default_value_t = 0, env = "WEILCHECK_SEED")]
    pub seed: u64,
    /// Cap on enumerated group elements and fixed-point set sizes.
    #[arg(long, default_value_t = 1 << 28, env = "WEILCHECK_BUDGET")]
    pub budget: u64,
    /// Exit with status 3 when any check is skipped for budget reasons.
    #[arg(long, env = "WEILCHECK_STRICT")]
    pub strict: bool,
    #[arg(long, value_enum, default_value = "json", env = "WEILCHECK_FORMAT")]
    pub format: Format,
    #[arg(long, env = "WEILCHECK_OUT")]
    #[serde(skip)]
    pub out: Option<std::path::PathBuf>,
    /// Include wall-clock timings (makes output run-dependent).
    #[arg(long, env = "WEILCHECK_TIMING")]
    #[serde(skip)]
    pub timing: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.n == 0 {
            return Err("n must be at least 1".into());
        }
        if self.budget == 0 {
            return Err("budget must be positive".into());
        }
        let ctx = Fq2::new(self.q).map_err(|e| format!("q = {}: {e}", self.q))?;
        let count = psi_enum(ctx.p(), ctx.r()).len() - 1;
        if self.psi == 0 || self.psi > count {
            return Err(format!("psi must lie in 1..={count} for q = {}", self.q));
        }
        Ok(())
    }
}
