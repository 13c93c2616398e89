//! Reading theory files from disk, with their parents.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use super::eval::prove_by;
use crate::error::{Error, Result};
use crate::kernel::Theory;

/// Theories loaded so far, by name, and where to look for parents.
#[derive(Clone, Default)]
pub struct Store {
    loaded: BTreeMap<String, Arc<Theory>>,
    search: Vec<PathBuf>,
    pub trust: bool,
}

impl Store {
    pub fn new(trust: bool) -> Store {
        Store { loaded: BTreeMap::new(), search: Vec::new(), trust }
    }

    /// Adds a directory searched for `NAME.thy` when a parent is needed.
    pub fn add_search_dir(&mut self, dir: &Path) {
        if !self.search.iter().any(|d| d == dir) {
            self.search.push(dir.to_path_buf());
        }
    }

    pub fn get(&self, name: &str) -> Option<Arc<Theory>> {
        if name == Theory::pplambda().name() {
            return Some(Theory::pplambda());
        }
        self.loaded.get(name).cloned()
    }

    /// Registers a theory built in memory so that later files may name it
    /// as a parent.
    pub fn insert(&mut self, thy: Arc<Theory>) {
        self.loaded.insert(thy.name().to_string(), thy);
    }

    fn find_file(&self, name: &str) -> Option<PathBuf> {
        self.search.iter().map(|d| d.join(format!("{name}.thy"))).find(|p| p.is_file())
    }

    fn parent(&mut self, name: &str) -> Result<Arc<Theory>> {
        if let Some(t) = self.get(name) {
            return Ok(t);
        }
        let path = self
            .find_file(name)
            .ok_or_else(|| Error::Theory(format!("cannot find parent theory {name}")))?;
        self.load_file(&path)
    }

    /// Parses theory text. Parents are resolved through the store.
    pub fn load_text(&mut self, text: &str) -> Result<Arc<Theory>> {
        let trust = self.trust;
        let mut parent = |n: &str| self.parent(n);
        let mut prove = |t: &Theory, f: &_, tac: &str| prove_by(t, f, tac);
        let thy = Arc::new(Theory::from_text(text, &mut parent, &mut prove, trust)?);
        self.insert(thy.clone());
        Ok(thy)
    }

    /// Loads a theory file; its directory is searched for its parents.
    pub fn load_file(&mut self, path: &Path) -> Result<Arc<Theory>> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        if let Some(dir) = path.parent() {
            self.add_search_dir(if dir.as_os_str().is_empty() { Path::new(".") } else { dir });
        }
        self.load_text(&text).map_err(|e| match e {
            Error::Io(_) => e,
            other => Error::Theory(format!("{}: {other}", path.display())),
        })
    }
}
