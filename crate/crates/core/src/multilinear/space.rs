use std::borrow::Cow;
use std::sync::Arc;

use crate::algebra_core::Mat;
use crate::error::{Error, Result};

/// Powers α^0..α^CACHED are computed once at construction.
const CACHED_POWERS: usize = 8;

/// Finite-dimensional space with a twist endomorphism α.
///
/// Labels name the basis for rendering only; they do not take part in equality.
#[derive(Clone, Debug)]
pub struct TwistedSpace {
    dim: usize,
    alpha: Mat,
    powers: Vec<Mat>,
    labels: Vec<String>,
}

/// Cochains share their spaces.
pub type Space = Arc<TwistedSpace>;

impl TwistedSpace {
    pub fn new(alpha: Mat) -> Result<Space> {
        Self::with_labels(alpha, None)
    }

    pub fn with_labels(alpha: Mat, labels: Option<Vec<String>>) -> Result<Space> {
        if !alpha.is_square() {
            return Err(Error::DimensionMismatch { expected: alpha.rows(), found: alpha.cols() });
        }
        let dim = alpha.rows();
        let labels = match labels {
            Some(l) if l.len() != dim => return Err(Error::DimensionMismatch { expected: dim, found: l.len() }),
            Some(l) => l,
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        let mut powers = vec![Mat::identity(dim)];
        for k in 0..CACHED_POWERS {
            let next = &alpha * &powers[k];
            powers.push(next);
        }
        Ok(Arc::new(TwistedSpace { dim, alpha, powers, labels }))
    }

    /// The space with twist equal to the identity.
    pub fn untwisted(dim: usize) -> Space {
        Self::new(Mat::identity(dim)).expect("identity is square")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> &Mat {
        &self.alpha
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// α^k; α^0 is the identity.
    pub fn power(&self, k: usize) -> Cow<'_, Mat> {
        if k < self.powers.len() {
            return Cow::Borrowed(&self.powers[k]);
        }
        let mut m = self.powers.last().expect("cache non-empty").clone();
        for _ in self.powers.len() - 1..k {
            m = &self.alpha * &m;
        }
        Cow::Owned(m)
    }

    /// Direct sum with twist α ⊕ β; labels are concatenated.
    pub fn direct_sum(&self, other: &TwistedSpace) -> Space {
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        Self::with_labels(self.alpha.direct_sum(&other.alpha), Some(labels)).expect("block sum is square")
    }
}

impl PartialEq for TwistedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.alpha == other.alpha
    }
}

impl Eq for TwistedSpace {}

pub(crate) fn same_space(a: &Space, b: &Space) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
