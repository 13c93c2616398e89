//! Process-wide registry of infix constants. Entries are only ever added.

use std::collections::BTreeSet;
use std::sync::{OnceLock, RwLock};

fn registry() -> &'static RwLock<BTreeSet<String>> {
    static REG: OnceLock<RwLock<BTreeSet<String>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(BTreeSet::new()))
}

pub fn register_infix(name: &str) {
    registry()
        .write()
        .expect("infix registry poisoned")
        .insert(name.to_string());
}

pub fn is_infix(name: &str) -> bool {
    registry()
        .read()
        .expect("infix registry poisoned")
        .contains(name)
}

/// Registered infixes made of symbol characters, longest first.
pub(crate) fn symbolic_infixes() -> Vec<String> {
    let mut v: Vec<String> = registry()
        .read()
        .expect("infix registry poisoned")
        .iter()
        .filter(|s| !s.chars().any(super::parse::is_ident_char))
        .cloned()
        .collect();
    v.sort_by_key(|s| std::cmp::Reverse(s.len()));
    v
}
