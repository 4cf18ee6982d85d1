use super::{
    classify_singularities, count_where, flex_census, flex_images_smooth, genus_from_census,
    genus_smooth, singularity_census, SingClass, SingReport,
};
use crate::curves::{ballico_hefez, fermat_curve, random_curve, work_field, CurveC};
use crate::dualize::{
    dual_curve_interpolate, dual_degree_by_section, expected_dual_degree, fermat_dual_closed_form,
    verify_dual,
};
use crate::error::Result;
use crate::gf::{Field, Gf};

/// One asserted quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
}

impl Check {
    fn eq<T: PartialEq + std::fmt::Display>(name: &str, expected: T, found: T) -> Check {
        Check {
            name: name.into(),
            pass: expected == found,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    fn holds(name: &str, ok: bool) -> Check {
        Check::eq(name, true, ok)
    }

    fn genus(expected: u64, found: Option<i64>) -> Check {
        Check {
            name: "genus".into(),
            expected: expected.to_string(),
            found: found.map_or_else(|| "undefined".into(), |g| g.to_string()),
            pass: found == Some(expected as i64),
        }
    }
}

/// Special (non-node) singularities grouped by (mu, r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialGroup {
    pub mu: Option<u64>,
    pub r: usize,
    pub count: usize,
    pub on_triangle: usize,
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub q: u64,
    pub seed: Option<u64>,
    pub retries: usize,
    /// The coefficients of the curve, as field element indices.
    pub tensor: Vec<u64>,
    pub dual_degree: u32,
    pub node_count: usize,
    pub specials: Vec<SpecialGroup>,
    pub flex_count: Option<usize>,
    pub hyperflex_count: Option<usize>,
    pub genus_source: u64,
    pub genus_dual: Option<i64>,
    pub checks: Vec<Check>,
}

impl CensusReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub trial: usize,
    pub seed: u64,
    pub report: Option<CensusReport>,
    pub error: Option<String>,
}

impl TrialOutcome {
    pub fn pass(&self) -> bool {
        self.report.as_ref().is_some_and(|r| r.pass())
    }
}

fn on_triangle(r: &SingReport) -> bool {
    r.point.coords.iter().any(|c| r.point.field.is_zero(c))
}

fn group_specials(census: &[SingReport]) -> Vec<SpecialGroup> {
    let mut groups: Vec<SpecialGroup> = Vec::new();
    for r in census.iter().filter(|r| r.class != SingClass::Node) {
        let tri = if on_triangle(r) { r.degree } else { 0 };
        match groups
            .iter_mut()
            .find(|g| g.mu == r.mu && g.r == r.branches)
        {
            Some(g) => {
                g.count += r.degree;
                g.on_triangle += tri;
            }
            None => groups.push(SpecialGroup {
                mu: r.mu,
                r: r.branches,
                count: r.degree,
                on_triangle: tri,
            }),
        }
    }
    groups.sort_by_key(|g| (g.mu, g.r));
    groups
}

fn tensor_of(c: &CurveC<Gf>) -> Vec<u64> {
    c.coeffs().iter().map(|a| c.field().index_of(*a)).collect()
}

/// delta = q(q^2+q+1)(q^3+3q^2+3q-1)/2.
pub fn expected_nodes(q: u64) -> u64 {
    q * (q * q + q + 1) * (q * q * q + 3 * q * q + 3 * q - 1) / 2
}

/// (q^3+2q^2-q+1)(q^2+q+1).
pub fn expected_flexes(q: u64) -> u64 {
    (q * q * q + 2 * q * q - q + 1) * (q * q + q + 1)
}

fn theorem1_trial(field: &Gf, q: u64, seed: u64) -> Result<CensusReport> {
    let (c, retries) = random_curve(field, q, seed)?;
    let d = dual_curve_interpolate(&c, None, seed)?;
    let dual_report = verify_dual(&c, &d, seed)?;
    let section = dual_degree_by_section(&c, seed)?;
    let census = singularity_census(&d, &c, seed)?;
    let flexes = flex_census(&c, seed)?;
    let deg = q * q + q + 1;
    let nodes = count_where(&census, |r| r.class == SingClass::Node);
    let genus_dual = genus_from_census(d.degree as u64, &census).ok();
    let mut checks = vec![
        Check::eq("dual degree", expected_dual_degree(q), d.degree as u64),
        Check::eq("dual degree by section", expected_dual_degree(q), section),
        Check::holds("dual vanishes on holdout images", dual_report.vanishing),
        Check::holds("dual squarefree", dual_report.squarefree),
        Check::eq(
            "non-node singular points",
            0,
            count_where(&census, |r| r.class != SingClass::Node),
        ),
        Check::eq("nodes", expected_nodes(q), nodes as u64),
        Check::eq("flexes", expected_flexes(q), flexes.flex_count as u64),
        Check::eq("hyperflexes", 0, flexes.hyperflex_count),
        Check::holds(
            "flex locus certified by a second auxiliary line",
            flexes.certified,
        ),
        Check::holds(
            "flex images are smooth points of the dual",
            flex_images_smooth(&c, &d, &flexes)?,
        ),
    ];
    checks.push(Check::genus(genus_smooth(deg), genus_dual));
    Ok(CensusReport {
        q,
        seed: Some(seed),
        retries,
        tensor: tensor_of(&c),
        dual_degree: d.degree,
        node_count: nodes,
        specials: group_specials(&census),
        flex_count: Some(flexes.flex_count),
        hyperflex_count: Some(flexes.hyperflex_count),
        genus_source: genus_smooth(deg),
        genus_dual,
        checks,
    })
}

/// Seed of trial t.
pub fn trial_seed(seed: u64, t: usize) -> u64 {
    seed.wrapping_add((t as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Degree, node, flex and genus checks on `trials` random members over
/// `field`. A failing trial is reported, not retried.
pub fn verify_theorem1(field: &Gf, q: u64, seed: u64, trials: usize) -> Vec<TrialOutcome> {
    (0..trials)
        .map(|t| {
            let s = trial_seed(seed, t);
            match theorem1_trial(field, q, s) {
                Ok(r) => TrialOutcome {
                    trial: t,
                    seed: s,
                    report: Some(r),
                    error: None,
                },
                Err(e) => TrialOutcome {
                    trial: t,
                    seed: s,
                    report: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct BhReport {
    pub q: u64,
    pub polynomial: crate::mpoly::MPoly<Gf>,
    pub nodes_off_triangle: usize,
    pub singular_on_triangle: usize,
    pub other_off_triangle: usize,
}

impl BhReport {
    pub fn pass(&self) -> bool {
        self.nodes_off_triangle as u64 == (self.q * self.q - self.q) / 2
            && self.singular_on_triangle == 0
            && self.other_off_triangle == 0
    }
}

/// Singular points of the Ballico-Hefez curve over the closure.
pub fn bh_census(q: u64, field: &Gf) -> Result<BhReport> {
    let h = ballico_hefez(q, field)?;
    let (w, emb) = work_field(field)?;
    let hw = h.map_coeffs(&w, |a| emb.apply(*a));
    // a rational curve: an ordinary double point has two branches
    let census = classify_singularities(&w, &hw, 0xb4, |_, _, node| if node { 2 } else { 1 })?;
    let nodes_off = count_where(&census, |r| r.class == SingClass::Node && !on_triangle(r));
    let on = count_where(&census, on_triangle);
    let other = count_where(&census, |r| r.class != SingClass::Node && !on_triangle(r));
    Ok(BhReport {
        q,
        polynomial: h,
        nodes_off_triangle: nodes_off,
        singular_on_triangle: on,
        other_off_triangle: other,
    })
}

/// Dual, node, special point and genus checks for the Fermat curve over
/// `field`.
pub fn verify_theorem2(field: &Gf, q: u64) -> Result<CensusReport> {
    let c = fermat_curve(field, q)?;
    let deg = q * q + q + 1;
    let closed = fermat_dual_closed_form(q, field)?;
    let interp = dual_curve_interpolate(&c, Some(expected_dual_degree(q) as u32), 1)?;
    let census = singularity_census(&closed, &c, 2)?;
    let nodes = count_where(&census, |r| r.class == SingClass::Node);
    let special_mu = q * q * (q + 1);
    let specials = count_where(&census, |r| {
        r.class
            == SingClass::Special {
                mu: special_mu,
                r: 1,
            }
    });
    let per_line: Vec<usize> = (0..3)
        .map(|i| {
            count_where(&census, |r| {
                r.class != SingClass::Node && r.point.field.is_zero(&r.point.coords[i])
            })
        })
        .collect();
    let genus_dual = genus_from_census(closed.degree as u64, &census).ok();
    let bh = bh_census(q, field)?;
    let checks = vec![
        Check::holds("interpolated dual equals closed form", interp.h == closed.h),
        Check::eq("dual degree", expected_dual_degree(q), closed.degree as u64),
        Check::eq("nodes", deg * deg * (q * q - q) / 2, nodes as u64),
        Check::eq(
            "specials with mu = q^2(q+1), r = 1",
            3 * deg,
            specials as u64,
        ),
        Check::eq(
            "singular points",
            nodes + specials,
            count_where(&census, |_| true),
        ),
        Check::eq(
            "specials on each coordinate line",
            format!("{:?}", [deg as usize; 3]),
            format!("{per_line:?}"),
        ),
        Check::genus(genus_smooth(deg), genus_dual),
        Check::eq(
            "Ballico-Hefez nodes off the triangle",
            (q * q - q) / 2,
            bh.nodes_off_triangle as u64,
        ),
        Check::eq(
            "Ballico-Hefez other singular points",
            0,
            bh.singular_on_triangle + bh.other_off_triangle,
        ),
    ];
    Ok(CensusReport {
        q,
        seed: None,
        retries: 0,
        tensor: tensor_of(&c),
        dual_degree: closed.degree,
        node_count: nodes,
        specials: group_specials(&census),
        flex_count: None,
        hyperflex_count: None,
        genus_source: genus_smooth(deg),
        genus_dual,
        checks,
    })
}
