//! Variable identifiers and the per-session variable table.
//!
//! Every computation session owns one [`VariableTable`]; the index of a
//! descriptor in the table is the canonical variable id used by all
//! polynomial data. Coordinate variables (duals of the basis elements) always
//! occupy ids `0..dim` in basis order, so expressions produced by different
//! pipelines over the same algebra agree on ids.

use std::collections::HashMap;
use std::fmt;

/// Dense variable id; index into the owning [`VariableTable`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// What a variable stands for. Coordinate kinds live on the dual space,
/// group kinds are parameters of the inner automorphism group.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum VarKind {
    /// Matrix coordinate `x[i,j]`, dual to the basis element `e[j,i]`.
    CoordMatrix { i: u32, j: u32 },
    /// Coordinate `x[p,0]`, dual to the nilindependent element `f[p]`.
    CoordNil { p: u32 },
    /// Plain coordinate `x<k>` for algebras without matrix enumeration
    /// (1-based basis index).
    CoordPlain { index: u32 },
    /// Group parameter `b[i,j]`, an off-diagonal entry of a triangular
    /// automorphism matrix, `i < j`.
    GroupB { i: u32, j: u32 },
    /// Group parameter `E[p]`, the reified exponential of the diagonal
    /// parameter of the p-th nilindependent direction.
    GroupE { p: u32 },
    /// Canonical group parameter `theta[k]` of the k-th generator.
    Theta { index: u32 },
    /// Reified exponential `T[k]` associated with `theta[k]`.
    ThetaExp { index: u32 },
}

impl VarKind {
    pub fn is_coordinate(&self) -> bool {
        matches!(
            self,
            VarKind::CoordMatrix { .. } | VarKind::CoordNil { .. } | VarKind::CoordPlain { .. }
        )
    }

    pub fn is_parameter(&self) -> bool {
        !self.is_coordinate()
    }
}

#[derive(Clone, Debug)]
pub struct VarInfo {
    pub kind: VarKind,
    /// Primary display name (dual-space name for coordinates).
    pub name: String,
    /// Algebra-space display name for coordinate variables (`e[i,j]`, `f[p]`
    /// or a plain basis label).
    pub alt_name: Option<String>,
}

/// Which set of display names to use when printing coordinate variables.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum PrintSpace {
    /// Dual-space coordinates: `x[i,j]`, `x[p,0]`, `x1`, ...
    Dual,
    /// Algebra elements: `e[i,j]`, `f[p]`, `e1`, ...
    Algebra,
}

/// Ordered table of variable descriptors; ids are assigned densely in
/// insertion order and never change.
#[derive(Clone, Debug, Default)]
pub struct VariableTable {
    vars: Vec<VarInfo>,
    by_name: HashMap<String, VarId>,
}

impl VariableTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Register a variable. Both `name` and `alt_name` must be fresh.
    pub fn add(
        &mut self,
        kind: VarKind,
        name: impl Into<String>,
        alt_name: Option<String>,
    ) -> VarId {
        let name = name.into();
        let id = VarId(self.vars.len() as u32);
        assert!(
            !self.by_name.contains_key(&name),
            "duplicate variable name {name}"
        );
        self.by_name.insert(name.clone(), id);
        if let Some(alt) = &alt_name {
            if alt != &name {
                assert!(
                    !self.by_name.contains_key(alt),
                    "duplicate variable name {alt}"
                );
                self.by_name.insert(alt.clone(), id);
            }
        }
        self.vars.push(VarInfo {
            kind,
            name,
            alt_name,
        });
        id
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn info(&self, id: VarId) -> &VarInfo {
        &self.vars[id.index()]
    }

    pub fn kind(&self, id: VarId) -> &VarKind {
        &self.vars[id.index()].kind
    }

    /// Resolve a display name (either space) to its id.
    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).copied()
    }

    /// Display name of `id` in the requested space. Parameters print the same
    /// in both spaces.
    pub fn display(&self, id: VarId, space: PrintSpace) -> &str {
        let info = &self.vars[id.index()];
        match space {
            PrintSpace::Dual => &info.name,
            PrintSpace::Algebra => info.alt_name.as_deref().unwrap_or(&info.name),
        }
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.vars.len()).map(|i| VarId(i as u32))
    }

    /// Find the reified exponential variable for generator `index`, creating
    /// it if missing.
    pub fn theta_exp(&mut self, index: u32) -> VarId {
        for (i, v) in self.vars.iter().enumerate() {
            if v.kind == (VarKind::ThetaExp { index }) {
                return VarId(i as u32);
            }
        }
        self.add(VarKind::ThetaExp { index }, format!("T[{index}]"), None)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}
