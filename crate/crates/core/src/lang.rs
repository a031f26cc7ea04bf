//! The Lang map λ(x) = x⁻¹·Frob(x) on truncated groups, its kernel
//! (the rational-point subgroup) and fiber structure, and the quotient
//! map α obtained by lifting rational points through a covering
//! homomorphism and applying λ to the lift.

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::lgroup::{self, TruncElem};
use crate::scan;
use serde::Serialize;
use std::collections::HashMap;

/// A fixed base field F_q inside a work field F_{q^m}, with the group
/// shape the Lang map acts on.
#[derive(Clone, Debug)]
pub struct LangContext {
    n: usize,
    d: usize,
    field: Field,
    base_q: u64,
}

impl LangContext {
    pub fn new(n: usize, d: usize, field: &Field, base_q: u64) -> Result<LangContext> {
        if n == 0 || d == 0 {
            return Err(Error::BadSpec("n and d must be at least 1".into()));
        }
        let e = field.exponent_of(base_q)?;
        if field.r() as u32 % e != 0 {
            return Err(Error::BadSpec(format!(
                "base field of size {base_q} does not sit inside a degree-{} extension",
                field.r()
            )));
        }
        Ok(LangContext { n, d, field: field.clone(), base_q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn base_q(&self) -> u64 {
        self.base_q
    }

    fn check_shape(&self, x: &TruncElem, what: &str) -> Result<()> {
        if x.n() != self.n || x.d() != self.d || x.field() != &self.field {
            return Err(Error::Mismatch(format!(
                "{what} has shape ({},{}) over GF({}) but the context wants ({},{}) over GF({})",
                x.n(),
                x.d(),
                x.field().order(),
                self.n,
                self.d,
                self.field.order()
            )));
        }
        Ok(())
    }

    /// λ(x) = x⁻¹ · Frob_q(x).
    pub fn lang(&self, x: &TruncElem) -> Result<TruncElem> {
        self.check_shape(x, "lang argument")?;
        x.inv().mul(&x.frobenius(self.base_q)?)
    }

    /// Is every coefficient fixed by the q-power Frobenius?
    pub fn is_rational(&self, x: &TruncElem) -> Result<bool> {
        self.check_shape(x, "rationality argument")?;
        Ok(x.frobenius(self.base_q)? == *x)
    }

    /// The subgroup of Frobenius-fixed elements.
    pub fn rational_subgroup(&self) -> Result<Vec<TruncElem>> {
        let elems = lgroup::enumerate(self.n, self.d, &self.field)?;
        Ok(elems
            .into_iter()
            .filter(|x| self.is_rational(x).expect("shape matches"))
            .collect())
    }

    /// {x : λ(x) = 1}, by exhaustive scan of the work-field group.
    pub fn kernel(&self) -> Result<Vec<TruncElem>> {
        let elems = lgroup::enumerate(self.n, self.d, &self.field)?;
        Ok(elems
            .into_iter()
            .filter(|x| self.lang(x).expect("shape matches").is_identity())
            .collect())
    }

    /// Partition of the work-field group by λ-value.
    pub fn fibers(&self) -> Result<HashMap<TruncElem, Vec<TruncElem>>> {
        let elems = lgroup::enumerate(self.n, self.d, &self.field)?;
        let mut fibers: HashMap<TruncElem, Vec<TruncElem>> = HashMap::new();
        for x in elems {
            let v = self.lang(&x)?;
            fibers.entry(v).or_default().push(x);
        }
        Ok(fibers)
    }

    /// Kernel and fiber statistics with the structural cross-checks.
    pub fn report(&self) -> Result<LangReport> {
        let kernel = self.kernel()?;
        let fibers = self.fibers()?;
        let kernel_size = kernel.len();
        let fiber_sizes_constant = fibers.values().all(|f| f.len() == kernel_size);
        let rational = self.rational_subgroup()?;
        let kernel_matches_rational = {
            let mut a: Vec<u128> = kernel.iter().map(TruncElem::index).collect();
            let mut b: Vec<u128> = rational.iter().map(TruncElem::index).collect();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        };
        Ok(LangReport {
            kernel_size,
            fiber_count: fibers.len(),
            fiber_sizes_constant,
            kernel_matches_rational,
            elements: kernel,
        })
    }
}

/// Kernel/fiber summary for one Lang-map configuration.
#[derive(Clone, Debug)]
pub struct LangReport {
    pub kernel_size: usize,
    pub fiber_count: usize,
    pub fiber_sizes_constant: bool,
    pub kernel_matches_rational: bool,
    pub elements: Vec<TruncElem>,
}

impl LangReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kernel_size": self.kernel_size,
            "fiber_count": self.fiber_count,
            "elements": self.elements.iter().map(lgroup::trunc_to_json).collect::<Vec<_>>(),
        })
    }
}

/// A homomorphism between enumerated groups, stored as its full graph
/// and verified pairwise at construction.
#[derive(Clone, Debug)]
pub struct ExplicitHom {
    domain: Vec<TruncElem>,
    values: Vec<TruncElem>,
    index: HashMap<TruncElem, usize>,
}

impl ExplicitHom {
    /// Tabulate f on a closed domain, checking f(a·b) = f(a)·f(b) for
    /// every pair.
    pub fn tabulate<F>(domain: Vec<TruncElem>, f: F) -> Result<ExplicitHom>
    where
        F: Fn(&TruncElem) -> Result<TruncElem>,
    {
        if domain.is_empty() {
            return Err(Error::BadSpec("empty domain".into()));
        }
        let values: Vec<TruncElem> = domain.iter().map(&f).collect::<Result<_>>()?;
        let mut index = HashMap::with_capacity(domain.len());
        for (i, x) in domain.iter().enumerate() {
            if index.insert(x.clone(), i).is_some() {
                return Err(Error::Verification("duplicate domain element".into()));
            }
        }
        for (i, a) in domain.iter().enumerate() {
            for (j, b) in domain.iter().enumerate() {
                let ab = a.mul(b)?;
                let k = *index.get(&ab).ok_or_else(|| {
                    Error::Verification(format!(
                        "domain not closed at pair ({i}, {j})"
                    ))
                })?;
                if values[k] != values[i].mul(&values[j])? {
                    return Err(Error::Verification(format!(
                        "not a homomorphism at pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(ExplicitHom { domain, values, index })
    }

    pub fn domain(&self) -> &[TruncElem] {
        &self.domain
    }

    pub fn apply(&self, x: &TruncElem) -> Result<&TruncElem> {
        self.index
            .get(x)
            .map(|&i| &self.values[i])
            .ok_or_else(|| Error::Domain("element outside the tabulated domain".into()))
    }

    /// Preimages of the codomain identity.
    pub fn kernel(&self) -> Vec<TruncElem> {
        self.domain
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| v.is_identity())
            .map(|(x, _)| x.clone())
            .collect()
    }
}

/// The covering homomorphism γ: H → G that α lifts through.
#[derive(Clone, Debug)]
pub enum CoverMap {
    /// γ is the context's own Lang map (H = G, Γ = the rational subgroup).
    Lang,
    /// γ is an explicitly tabulated homomorphism on the work-field group.
    Table(ExplicitHom),
}

/// α at one point: the λ-value of a lift, with the spread of values
/// over the whole lift fiber recorded.
#[derive(Clone, Debug)]
pub struct Step2Value {
    pub value: TruncElem,
    pub well_defined: bool,
    pub fiber_values: Vec<TruncElem>,
}

/// α(x) for a rational x: pick preimages of x under γ inside the
/// work-field group, apply λ. Every value must land in ker γ.
pub fn step2_alpha(ctx: &LangContext, cover: &CoverMap, x: &TruncElem) -> Result<Step2Value> {
    let x_work = if x.field() == ctx.field() {
        x.clone()
    } else {
        lgroup::embed_into(x, ctx.field())?
    };
    if x_work.frobenius(ctx.base_q())? != x_work {
        return Err(Error::Domain(
            "alpha is only defined on rational points of the base".into(),
        ));
    }
    let lifts: Vec<TruncElem> = match cover {
        CoverMap::Lang => {
            if x_work.n() != ctx.n || x_work.d() != ctx.d {
                return Err(Error::Mismatch(
                    "point shape differs from the covering group".into(),
                ));
            }
            lgroup::enumerate(ctx.n, ctx.d, ctx.field())?
                .into_iter()
                .filter(|h| self_lang_is(ctx, h, &x_work))
                .collect()
        }
        CoverMap::Table(hom) => hom
            .domain()
            .iter()
            .filter(|h| hom.apply(h).map(|v| *v == x_work).unwrap_or(false))
            .cloned()
            .collect(),
    };
    if lifts.is_empty() {
        let searched = match cover {
            CoverMap::Lang => lgroup::group_order(ctx.n, ctx.d, ctx.field()).unwrap_or(u128::MAX),
            CoverMap::Table(hom) => hom.domain().len() as u128,
        };
        return Err(Error::NoPreimage { searched });
    }
    let mut fiber_values: Vec<TruncElem> = Vec::new();
    for h in &lifts {
        let v = ctx.lang(h)?;
        let in_gamma = match cover {
            CoverMap::Lang => ctx.lang(&v)?.is_identity(),
            CoverMap::Table(hom) => hom.apply(&v)?.is_identity(),
        };
        if !in_gamma {
            return Err(Error::Verification(
                "cover descriptor is inconsistent: a lift's λ-value escapes ker γ".into(),
            ));
        }
        if !fiber_values.contains(&v) {
            fiber_values.push(v);
        }
    }
    Ok(Step2Value {
        value: fiber_values[0].clone(),
        well_defined: fiber_values.len() == 1,
        fiber_values,
    })
}

fn self_lang_is(ctx: &LangContext, h: &TruncElem, target: &TruncElem) -> bool {
    ctx.lang(h).map(|v| v == *target).unwrap_or(false)
}

/// α evaluated across all of G(F_q), with the structural conclusions.
#[derive(Clone, Debug, Serialize)]
pub struct Step2Report {
    pub domain_size: usize,
    pub gamma_size: usize,
    pub all_well_defined: bool,
    pub homomorphism: bool,
    pub surjective: bool,
    /// For the self-cover γ = λ: does α fix Γ pointwise?
    pub identity_on_gamma: Option<bool>,
}

/// Run α over the whole rational subgroup and test that it is a
/// well-defined surjective homomorphism onto Γ = ker γ.
pub fn step2_report(ctx: &LangContext, cover: &CoverMap) -> Result<Step2Report> {
    let domain = ctx.rational_subgroup()?;
    let gamma: Vec<TruncElem> = match cover {
        CoverMap::Lang => ctx.kernel()?,
        CoverMap::Table(hom) => hom.kernel(),
    };
    let values: Vec<Step2Value> = domain
        .iter()
        .map(|x| step2_alpha(ctx, cover, x))
        .collect::<Result<_>>()?;
    let all_well_defined = values.iter().all(|v| v.well_defined);
    let image: Vec<&TruncElem> = {
        let mut seen = Vec::new();
        for v in &values {
            if !seen.contains(&&v.value) {
                seen.push(&v.value);
            }
        }
        seen
    };
    let surjective =
        image.len() == gamma.len() && gamma.iter().all(|g| image.contains(&g));
    let by_point: HashMap<&TruncElem, &TruncElem> =
        domain.iter().zip(values.iter().map(|v| &v.value)).collect();
    let homomorphism = all_well_defined
        && scan::all_pairs(domain.len(), |i, j| {
            let xy = domain[i].mul(&domain[j]).expect("same shape");
            match by_point.get(&xy) {
                Some(&axy) => {
                    let prod = values[i].value.mul(&values[j].value).expect("same shape");
                    *axy == prod
                }
                // domain is a subgroup, so this cannot happen
                None => false,
            }
        });
    let identity_on_gamma = match cover {
        CoverMap::Lang => Some(
            domain
                .iter()
                .zip(values.iter())
                .all(|(x, v)| v.value == *x),
        ),
        CoverMap::Table(_) => None,
    };
    Ok(Step2Report {
        domain_size: domain.len(),
        gamma_size: gamma.len(),
        all_well_defined,
        homomorphism,
        surjective,
        identity_on_gamma,
    })
}

/// Retry α with doubling work-field degree while lifts are missing
/// (degree capped by both m ≤ 12 and the supported field degrees).
pub fn step2_alpha_retry(
    x: &TruncElem,
    start_m: usize,
    cover_self: bool,
) -> Result<(Step2Value, usize)> {
    if !cover_self {
        return Err(Error::BadSpec(
            "retry is only meaningful for the self-cover γ = λ".into(),
        ));
    }
    let base = x.field().clone();
    let base_q = base.order() as u64;
    let mut m = start_m.max(1);
    let mut last = Error::NoPreimage { searched: 0 };
    while m <= 12 && base.r() * m <= crate::gf::MAX_R {
        let work = crate::gf::FieldSpec::default_for(base.p(), base.r() * m)?;
        let ctx = LangContext::new(x.n(), x.d(), &work, base_q)?;
        match step2_alpha(&ctx, &CoverMap::Lang, x) {
            Ok(v) => return Ok((v, m)),
            Err(Error::NoPreimage { searched }) => {
                last = Error::NoPreimage { searched };
                m *= 2;
            }
            Err(other) => return Err(other),
        }
    }
    Err(last)
}
