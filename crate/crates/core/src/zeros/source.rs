use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::{zeros, ZeroList};
use crate::error::Result;
use crate::precision::PrecReal;
use crate::qlaguerre::PolySpec;

/// Anything that can hand out zero lists. The checkers are written against
/// this so that tests can inject faulty data.
pub trait ZeroSource: Sync {
    fn zeros(&self, spec: &PolySpec) -> Result<ZeroList>;
}

/// Computes every request from scratch.
#[derive(Clone, Copy, Debug, Default)]
pub struct Direct;

impl ZeroSource for Direct {
    fn zeros(&self, spec: &PolySpec) -> Result<ZeroList> {
        zeros(spec)
    }
}

type Key = (String, String, u8, usize, u32);

fn key(spec: &PolySpec) -> Key {
    (
        spec.params.q().to_exact_string(),
        spec.params.delta().to_exact_string(),
        spec.shift,
        spec.degree,
        spec.params.precision(),
    )
}

/// Read-mostly memo keyed by `(q, delta, t, n, P)`.
///
/// Lookups share a read lock; a miss computes outside any lock and then
/// inserts under the write lock, so two threads may race to compute the same
/// list but only one result is kept.
#[derive(Debug, Default)]
pub struct ZeroCache {
    map: RwLock<HashMap<Key, Arc<ZeroList>>>,
}

impl ZeroCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, spec: &PolySpec) -> Result<Arc<ZeroList>> {
        let k = key(spec);
        if let Some(hit) = self.map.read().expect("cache lock").get(&k) {
            return Ok(Arc::clone(hit));
        }
        let fresh = Arc::new(zeros(spec)?);
        let mut map = self.map.write().expect("cache lock");
        Ok(Arc::clone(map.entry(k).or_insert(fresh)))
    }
}

impl ZeroSource for ZeroCache {
    fn zeros(&self, spec: &PolySpec) -> Result<ZeroList> {
        self.get(spec).map(|z| (*z).clone())
    }
}

/// Negative control: moves one zero of one polynomial by ten times its gap to
/// the next zero (the previous one for the last zero), then re-sorts.
pub struct Perturbed<'a> {
    pub inner: &'a dyn ZeroSource,
    pub shift: u8,
    pub degree: usize,
    pub index: usize,
}

impl ZeroSource for Perturbed<'_> {
    fn zeros(&self, spec: &PolySpec) -> Result<ZeroList> {
        let mut list = self.inner.zeros(spec)?;
        if spec.shift != self.shift || spec.degree != self.degree || list.is_empty() {
            return Ok(list);
        }
        let z = &mut list.zeros;
        let i = self.index.min(z.len() - 1);
        let prec = z[i].prec();
        let gap = if i + 1 < z.len() {
            &z[i + 1] - &z[i]
        } else if i > 0 {
            &z[i - 1] - &z[i]
        } else {
            z[i].abs().max(PrecReal::one(prec))
        };
        z[i] = &z[i] + gap * 10;
        z.sort_by(|a, b| a.partial_cmp(b).expect("finite zeros"));
        list.neg_count = z.iter().filter(|v| v.is_negative()).count();
        Ok(list)
    }
}
