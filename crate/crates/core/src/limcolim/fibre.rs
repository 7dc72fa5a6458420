use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{fibre, FinCategory, FunctorData, Mor, Ob};
use crate::grothfib::TotalCategory;
use crate::Result;

/// The fibre of a total category over one parameter, with index maps both ways.
#[derive(Debug, Clone)]
pub struct FibreView {
    pub base: Ob,
    pub cat: Arc<FinCategory>,
    pub inclusion: FunctorData,
    ob_of: HashMap<Ob, Ob>,
    mor_of: HashMap<Mor, Mor>,
}

impl FibreView {
    pub fn new(t: &TotalCategory, a: Ob) -> Result<Self> {
        let (cat, inclusion) = fibre(&t.p, a)?;
        let ob_of = cat.objects().map(|o| (inclusion.ob(o), o)).collect();
        let mor_of = cat.morphisms().map(|m| (inclusion.mor(m), m)).collect();
        Ok(Self {
            base: a,
            cat,
            inclusion,
            ob_of,
            mor_of,
        })
    }

    /// Fibre object of a total object over `base`.
    pub fn ob(&self, o: Ob) -> Option<Ob> {
        self.ob_of.get(&o).copied()
    }

    /// Fibre morphism of a total morphism over the identity.
    pub fn mor(&self, m: Mor) -> Option<Mor> {
        self.mor_of.get(&m).copied()
    }

    /// Total object of a fibre object.
    pub fn up(&self, o: Ob) -> Ob {
        self.inclusion.ob(o)
    }

    pub fn up_mor(&self, m: Mor) -> Mor {
        self.inclusion.mor(m)
    }
}
