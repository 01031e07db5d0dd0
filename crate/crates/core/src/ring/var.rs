use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

/// An interned indeterminate.
///
/// Names are interned process-wide; ids only order monomials internally and
/// never leak into printed output.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub(crate) u32);

#[derive(Default)]
struct Registry {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

fn registry() -> &'static RwLock<Registry> {
    static REG: OnceLock<RwLock<Registry>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(Registry::default()))
}

impl Var {
    pub fn new(name: &str) -> Var {
        if let Some(&id) = registry().read().expect("registry poisoned").index.get(name) {
            return Var(id);
        }
        let mut reg = registry().write().expect("registry poisoned");
        if let Some(&id) = reg.index.get(name) {
            return Var(id);
        }
        let id = reg.names.len() as u32;
        reg.names.push(name.to_string());
        reg.index.insert(name.to_string(), id);
        Var(id)
    }

    pub fn name(&self) -> String {
        registry().read().expect("registry poisoned").names[self.0 as usize].clone()
    }

    /// Indeterminate adjoined by `det_and_cof`; unreachable from the parser.
    pub fn adjoined_x() -> Var {
        Var::new("_x")
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
