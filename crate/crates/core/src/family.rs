//! State families addressable by name, each with its own sampler.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::qcore::PureState;
use crate::states::{
    haar_pure, make_dicke, make_wclass, sample_gd, sample_gghz, sample_ghzclass, sample_gw,
    sample_wclass_params, DickeParams, StateRng,
};

/// Which set of bounds applies to a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Gghz,
    Gw,
    Dicke,
    Gd,
    WClass,
    GhzClass,
    Haar,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Gghz,
        Family::Gw,
        Family::Dicke,
        Family::Gd,
        Family::WClass,
        Family::GhzClass,
        Family::Haar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gghz => "gghz",
            Family::Gw => "gw",
            Family::Dicke => "dicke",
            Family::Gd => "gd",
            Family::WClass => "wclass",
            Family::GhzClass => "ghzclass",
            Family::Haar => "haar",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "state family",
                name: s.to_string(),
            })
    }
}

/// Sampler for one family of pure states.
pub trait StateFamily: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    fn tag(&self) -> Family;

    /// Errors when the family has no member on `n_qubits` qubits.
    fn check_size(&self, n_qubits: usize) -> Result<()>;

    fn sample(&self, n_qubits: usize, rng: &mut StateRng) -> Result<PureState>;
}

fn size_error(family: &str, n: usize, allowed: &str) -> Error {
    Error::InvalidParameter(format!("{family} needs {allowed} qubits, got {n}"))
}

fn at_least(family: &str, n: usize, min: usize) -> Result<()> {
    if n < min || n > 20 {
        return Err(size_error(family, n, &format!("{min}..=20")));
    }
    Ok(())
}

fn exactly_three(family: &str, n: usize) -> Result<()> {
    if n != 3 {
        return Err(size_error(family, n, "exactly 3"));
    }
    Ok(())
}

/// Coefficients Haar-uniform on the family's parameter sphere; `real`
/// restricts them to real values.
#[derive(Clone, Debug)]
pub struct HaarFamily {
    pub family: Family,
    pub real: bool,
}

impl HaarFamily {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            real: false,
        }
    }
}

impl StateFamily for HaarFamily {
    fn name(&self) -> &str {
        self.family.name()
    }

    fn tag(&self) -> Family {
        self.family
    }

    fn check_size(&self, n: usize) -> Result<()> {
        match self.family {
            Family::WClass | Family::GhzClass => exactly_three(self.name(), n),
            _ => at_least(self.name(), n, 3),
        }
    }

    fn sample(&self, n: usize, rng: &mut StateRng) -> Result<PureState> {
        self.check_size(n)?;
        match self.family {
            Family::Gghz => sample_gghz(n, rng, self.real),
            Family::Gw => sample_gw(n, rng, self.real),
            Family::Gd => sample_gd(n, rng, self.real),
            Family::WClass => make_wclass(&sample_wclass_params(rng, self.real)),
            Family::GhzClass => sample_ghzclass(rng, self.real),
            Family::Haar => haar_pure(n, rng),
            // excitation number uniform over the entangled layers
            Family::Dicke => make_dicke(&DickeParams {
                n_qubits: n,
                n_excited: rng.random_range(1..n),
            }),
        }
    }
}

/// Families addressable by name.
#[derive(Clone, Debug, Default)]
pub struct FamilyRegistry {
    entries: BTreeMap<String, Arc<dyn StateFamily>>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        for f in Family::ALL {
            r.register(Arc::new(HaarFamily::new(f)));
        }
        r
    }

    pub fn register(&mut self, family: Arc<dyn StateFamily>) {
        self.entries.insert(family.name().to_string(), family);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn StateFamily>> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownName {
                kind: "state family",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }
}
