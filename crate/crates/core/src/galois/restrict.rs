//! Which of the standard restrictions a bounded clone satisfies.

use serde::Serialize;

use crate::error::Result;
use crate::galois::clone::BoundedClone;
use crate::pmf::{self, Pmf};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub closed: bool,
    pub complete: bool,
    pub inhabited_shapes: Vec<(usize, usize)>,
    /// `n ≤ m` on every inhabited shape.
    pub outputs_at_least_inputs: bool,
    pub outputs_at_most_inputs: bool,
    pub square_shapes_only: bool,
    pub univalued_only: bool,
    pub injective_only: bool,
    pub total_extension: bool,
    /// `None` when the relevant shape lies outside the caps.
    pub contains_swap: Option<bool>,
    pub contains_discard: Option<bool>,
    pub contains_duplicate: Option<bool>,
    pub contains_constants: Option<bool>,
    pub contains_projections: Option<bool>,
    pub inverse_closed: bool,
    /// `n ⪯ m` iff the clone has a member of shape `(n, m)`.
    pub shape_preorder: Vec<(usize, usize)>,
}

fn within(c: &BoundedClone, fs: &[Pmf]) -> Result<Option<bool>> {
    let caps = c.caps();
    if fs.iter().any(|f| !caps.fits(f.n(), f.m())) {
        return Ok(None);
    }
    for f in fs {
        if !c.member(f)? {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// Scans the maximal members of `c`. Shapes whose maximal members are
/// unknown are ignored.
pub fn restriction_report(c: &BoundedClone) -> Result<RestrictionReport> {
    let b = c.base();
    let inhabited: Vec<(usize, usize)> = c.inhabited_shapes().iter().map(|s| (s.n, s.m)).collect();
    let tops: Vec<&Pmf> = c.all_maximal().collect();
    let caps = c.caps();
    let mut inverse_closed = true;
    for f in &tops {
        if caps.fits(f.m(), f.n()) && !c.member(&f.inverse())? {
            inverse_closed = false;
            break;
        }
    }
    // every member extends to a total member iff the maximal ones are total
    let total_extension = tops.iter().all(|f| f.is_total());
    let constants: Vec<Pmf> = b.elements().map(|x| pmf::constant(b, &[x])).collect::<Result<_>>()?;
    let projections = vec![pmf::projection(b, 2, 0)?, pmf::projection(b, 2, 1)?];
    Ok(RestrictionReport {
        closed: c.verify_closed().is_ok(),
        complete: c.is_complete(),
        outputs_at_least_inputs: inhabited.iter().all(|&(n, m)| n <= m),
        outputs_at_most_inputs: inhabited.iter().all(|&(n, m)| n >= m),
        square_shapes_only: inhabited.iter().all(|&(n, m)| n == m),
        univalued_only: tops.iter().all(|f| f.is_univalued()),
        injective_only: tops.iter().all(|f| f.is_injective()),
        total_extension,
        contains_swap: within(c, &[pmf::swap(b)])?,
        contains_discard: within(c, &[pmf::diagonal(b, 0)?])?,
        contains_duplicate: within(c, &[pmf::diagonal(b, 2)?])?,
        contains_constants: within(c, &constants)?,
        contains_projections: within(c, &projections)?,
        inverse_closed,
        shape_preorder: inhabited.clone(),
        inhabited_shapes: inhabited,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FragmentVerdict {
    /// Membership is decided by the single-output projections.
    Holds,
    /// A pmf on which the two sides disagree.
    Fails(Pmf),
    Inapplicable(String),
}

/// Checks that membership is determined by the unary-output fragment:
/// `f ∈ C` iff `π_{m,i} ∘ f ∈ C` for all `i < m`, over every pmf of every
/// densely indexed shape. Requires the swap, the duplication `Δ_2` and the
/// projections `π_{2,i}`; nullary outputs are only checked when the
/// discarding map `Δ_0` is present too, since otherwise nothing forces them.
pub fn unary_fragment_check(c: &BoundedClone) -> Result<FragmentVerdict> {
    let b = c.base();
    let caps = c.caps();
    if caps.n_max < 2 || caps.m_max < 2 {
        return Ok(FragmentVerdict::Inapplicable("caps below (2,2)".into()));
    }
    let needed = [
        ("swap", pmf::swap(b)),
        ("duplication", pmf::diagonal(b, 2)?),
        ("first projection", pmf::projection(b, 2, 0)?),
        ("second projection", pmf::projection(b, 2, 1)?),
    ];
    for (name, f) in &needed {
        if !c.member(f)? {
            return Ok(FragmentVerdict::Inapplicable(format!("the clone lacks the {name}")));
        }
    }
    let with_discard = c.member(&pmf::diagonal(b, 0)?)?;
    for fam in c.families() {
        let (n, m) = (fam.shape().n, fam.shape().m);
        if (m == 0 && !with_discard) || fam.count().is_none() || !caps.fits(m, 1) {
            continue;
        }
        let projs: Vec<Pmf> = (0..m).map(|i| pmf::projection(b, m, i)).collect::<Result<_>>()?;
        for f in pmf::all_of_shape(b, n, m)? {
            let mut rhs = true;
            for p in &projs {
                if !c.member(&pmf::compose(p, &f)?)? {
                    rhs = false;
                    break;
                }
            }
            if c.member(&f)? != rhs {
                return Ok(FragmentVerdict::Fails(f));
            }
        }
    }
    Ok(FragmentVerdict::Holds)
}
