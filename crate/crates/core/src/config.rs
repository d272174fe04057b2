use serde::Serialize;

/// Search bounds shared by the library and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    /// Largest power `r` accepted for `A_r`.
    pub max_power: u32,
    /// Largest extension degree tried when splitting a module.
    pub s_max: u32,
    /// Largest number of candidate subspaces an enumeration may visit.
    pub enumeration_cap: u128,
    /// Largest number of Frobenius sums tried when building a root.
    pub m_max: u32,
    /// Largest polynomial degree allowed in a canonical submodule.
    pub degree_guard: u64,
    /// Largest power checked by the simplicity certificate.
    pub r_max: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_power: 12,
            s_max: 12,
            enumeration_cap: 1_000_000,
            m_max: 16,
            degree_guard: 10_000,
            r_max: 6,
        }
    }
}

impl Config {
    /// Rejects powers outside `1..=max_power`.
    pub fn check_power(&self, r: u32) -> crate::Result<()> {
        if r == 0 || r > self.max_power {
            return Err(crate::Error::InvalidArgument(format!(
                "power r = {r} must lie in 1..={}",
                self.max_power
            )));
        }
        Ok(())
    }
}
