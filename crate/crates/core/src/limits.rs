use crate::error::{Error, Result};

/// Size caps shared by every exhaustive computation.
///
/// Exceeding a cap is always reported as [`Error::ResourceLimit`]; nothing is
/// silently truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring or module (number of elements) that may be enumerated.
    pub max_elements: usize,
    /// Largest submodule lattice that may be enumerated.
    pub max_submodules: usize,
    /// Largest Hom set / endomorphism ring that may be materialised.
    pub max_homs: usize,
    /// Node budget for backtracking searches.
    pub max_search_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 4096,
            max_submodules: 100_000,
            max_homs: 4096,
            max_search_nodes: 10_000_000,
        }
    }
}

impl Limits {
    /// Parses a `key=value,...` override list, e.g. `elements=512,submodules=1000`.
    ///
    /// Recognised keys: `elements`, `submodules`, `homs`, `nodes`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("malformed limit `{item}`")))?;
            let value: u64 = value.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("limit `{key}` needs a non-negative integer"))
            })?;
            match key.trim() {
                "elements" => self.max_elements = value as usize,
                "submodules" => self.max_submodules = value as usize,
                "homs" => self.max_homs = value as usize,
                "nodes" => self.max_search_nodes = value,
                other => {
                    return Err(Error::InvalidParameter(format!("unknown limit `{other}`")));
                }
            }
        }
        Ok(self)
    }

    /// Defaults, overridden by the `MODREG_LIMITS` environment variable when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var("MODREG_LIMITS") {
            Ok(spec) => Limits::default().with_overrides(&spec),
            Err(_) => Ok(Limits::default()),
        }
    }

    pub(crate) fn check_elements(&self, what: &str, count: u128) -> Result<()> {
        if count > self.max_elements as u128 {
            return Err(Error::ResourceLimit(format!(
                "{what} has {count} elements (cap {})",
                self.max_elements
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let l = Limits::default()
            .with_overrides("elements=10, nodes=5")
            .unwrap();
        assert_eq!(l.max_elements, 10);
        assert_eq!(l.max_search_nodes, 5);
        assert_eq!(l.max_submodules, 100_000);
    }

    #[test]
    fn overrides_reject_garbage() {
        assert!(Limits::default().with_overrides("elements").is_err());
        assert!(Limits::default().with_overrides("colour=3").is_err());
        assert!(Limits::default().with_overrides("elements=-1").is_err());
    }
}
