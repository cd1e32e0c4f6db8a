use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::bits::{full_mask, ones, Mask};
use crate::error::{Error, Result};
use crate::MAX_WORLDS;

/// Ordered, labelled carrier. Index `i` refers to `labels()[i]` for the
/// lifetime of the value; clones share the label storage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    labels: Arc<[String]>,
}

impl WorldSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyWorldSet);
        }
        if labels.len() > MAX_WORLDS {
            return Err(Error::CapExceeded {
                what: "worlds",
                limit: MAX_WORLDS,
                actual: labels.len(),
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(WorldSet {
            labels: labels.into(),
        })
    }

    /// Worlds labelled `"0"`, `"1"`, ….
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> Mask {
        full_mask(self.len())
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            })
        }
    }

    pub fn check_mask(&self, mask: Mask) -> Result<()> {
        if mask & !self.full() == 0 {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange {
                mask,
                len: self.len(),
            })
        }
    }

    /// Mask built from labels.
    pub fn mask_of<'a, I>(&self, labels: I) -> Result<Mask>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut m = 0;
        for l in labels {
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            m |= 1 << i;
        }
        Ok(m)
    }

    /// Labels of the members of `mask`, in index order.
    pub fn render(&self, mask: Mask) -> Vec<&str> {
        ones(mask).map(|i| self.label(i)).collect()
    }

    /// `{a,b}`-style rendering used in reports.
    pub fn render_set(&self, mask: Mask) -> String {
        format!("{{{}}}", self.render(mask).join(","))
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}
