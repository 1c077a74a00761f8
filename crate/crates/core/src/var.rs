//! Process-wide variable registry.
//!
//! The registry is append-only. Variable order (and hence the canonical term
//! order of every polynomial) is registration order, with the formal symbols
//! `d` (∂), `x` (λ), `y` (μ), `z` (ν) always first, followed by the common
//! parameters `a`, `b`, `c`, `alpha`, `beta`, `gamma`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use spin::RwLock;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// One of ∂, λ, μ, ν.
    Formal,
    /// Algebra parameters, family parameters and solver unknowns.
    Parameter,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(u32);

struct Registry {
    entries: Vec<(String, VarKind)>,
    by_name: BTreeMap<String, u32>,
}

static REGISTRY: RwLock<Registry> = RwLock::new(Registry {
    entries: Vec::new(),
    by_name: BTreeMap::new(),
});

const SEED: [(&str, VarKind); 10] = [
    ("d", VarKind::Formal),
    ("x", VarKind::Formal),
    ("y", VarKind::Formal),
    ("z", VarKind::Formal),
    ("a", VarKind::Parameter),
    ("b", VarKind::Parameter),
    ("c", VarKind::Parameter),
    ("alpha", VarKind::Parameter),
    ("beta", VarKind::Parameter),
    ("gamma", VarKind::Parameter),
];

fn seeded() {
    if !REGISTRY.read().entries.is_empty() {
        return;
    }
    let mut reg = REGISTRY.write();
    if reg.entries.is_empty() {
        for (i, (name, kind)) in SEED.iter().enumerate() {
            reg.entries.push((name.to_string(), *kind));
            reg.by_name.insert(name.to_string(), i as u32);
        }
    }
}

/// ∂
pub const D: VarId = VarId(0);
/// λ
pub const LAMBDA: VarId = VarId(1);
/// μ
pub const MU: VarId = VarId(2);
/// ν
pub const NU: VarId = VarId(3);

impl VarId {
    /// Looks up or registers a parameter.
    pub fn param(name: &str) -> Result<VarId> {
        seeded();
        if let Some(&i) = REGISTRY.read().by_name.get(name) {
            let id = VarId(i);
            return match id.kind() {
                VarKind::Parameter => Ok(id),
                VarKind::Formal => Err(Error::VariableKind { name: name.to_string() }),
            };
        }
        if name.is_empty() {
            return Err(Error::UnknownVariable(String::new()));
        }
        let mut reg = REGISTRY.write();
        if let Some(&i) = reg.by_name.get(name) {
            return Ok(VarId(i));
        }
        let i = reg.entries.len() as u32;
        reg.entries.push((name.to_string(), VarKind::Parameter));
        reg.by_name.insert(name.to_string(), i);
        Ok(VarId(i))
    }

    /// Registers a parameter, panicking only on collision with a formal symbol.
    pub fn named(name: &str) -> VarId {
        VarId::param(name).expect("parameter name collides with a formal symbol")
    }

    pub fn lookup(name: &str) -> Option<VarId> {
        seeded();
        REGISTRY.read().by_name.get(name).map(|&i| VarId(i))
    }

    pub fn name(self) -> String {
        seeded();
        REGISTRY.read().entries[self.0 as usize].0.clone()
    }

    pub fn kind(self) -> VarKind {
        seeded();
        REGISTRY.read().entries[self.0 as usize].1
    }

    pub fn is_formal(self) -> bool {
        self.0 < 4
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
