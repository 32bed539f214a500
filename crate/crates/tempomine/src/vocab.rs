//! String interning for vertex identifiers and attribute tokens.
//!
//! Label comparisons dominate the miner's inner loops, so every identifier
//! and attribute token is mapped to a dense `u32` at load time.

use std::collections::HashMap;

/// Interned vertex identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Interned attribute token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Attr(pub u32);

/// Bidirectional string-to-id map. Ids are assigned in first-seen order,
/// so interning is deterministic for a fixed load order.
#[derive(Debug, Default, Clone)]
pub struct Interner {
    by_name: HashMap<String, u32>,
    names: Vec<String>,
}

impl Interner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> u32 {
        if let Some(&id) = self.by_name.get(name) {
            return id;
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_string());
        self.by_name.insert(name.to_string(), id);
        id
    }

    pub fn resolve(&self, id: u32) -> &str {
        &self.names[id as usize]
    }

    pub fn get(&self, name: &str) -> Option<u32> {
        self.by_name.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// The two interners shared by every network of one data set.
#[derive(Debug, Default, Clone)]
pub struct Vocab {
    pub vertices: Interner,
    pub attrs: Interner,
}

impl Vocab {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: &str) -> VertexId {
        VertexId(self.vertices.intern(name))
    }

    pub fn attr(&mut self, name: &str) -> Attr {
        Attr(self.attrs.intern(name))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        self.vertices.resolve(v.0)
    }

    pub fn attr_name(&self, a: Attr) -> &str {
        self.attrs.resolve(a.0)
    }
}
