//! Property suites for `entropy verify`.

use num_rational::BigRational;

use dr_entropy::cover_entropy::{cover_entropy_estimate, verify_cover_lemmas, word_cover, DEFAULT_ATOM_BUDGET};
use dr_entropy::dr_core::{iterate_distance, BinaryPoint, IntervalDoubling, PaddedBinary};
use dr_entropy::graph_model::{EdgeId, Ultragraph};
use dr_entropy::metric_entropy::random::random_rose_instances;
use dr_entropy::metric_entropy::{entropy_estimate, ssep_bruteforce, ssep_count, verify_sep_span_chain, KSpec};
use dr_entropy::numeric::{dyadic, rational, to_f64};
use dr_entropy::shift_space::{
    dx_distance, first_difference, representatives, EnumKind, GraphShiftSystem, Metric, PathEnumeration, Tail,
    Ultrapath,
};

use crate::report::Report;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    SepSpan,
    CoverLemmas,
    Metrics,
    Zebra,
    Counterexamples,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::SepSpan => "sep-span",
            Suite::CoverLemmas => "cover-lemmas",
            Suite::Metrics => "metrics",
            Suite::Zebra => "zebra",
            Suite::Counterexamples => "counterexamples",
        }
    }
}

/// Slack allowed in `cover ≤ metric + slack` by the zebra suite.
pub const ZEBRA_SLACK: f64 = 0.05;

fn err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

pub fn run(suite: Suite, seed: u64, samples: Option<usize>) -> Result<Report, CliError> {
    let mut r = Report::new("verify", &["check", "instances", "holds", "detail"]);
    r.param("suite", suite.name());
    match suite {
        Suite::SepSpan | Suite::CoverLemmas => {
            r.param("seed", seed.to_string());
        }
        _ => {}
    }
    match suite {
        Suite::SepSpan => sep_span(&mut r, seed, samples.unwrap_or(100))?,
        Suite::CoverLemmas => cover_lemmas(&mut r, seed, samples.unwrap_or(24))?,
        Suite::Metrics => metrics(&mut r)?,
        Suite::Zebra => zebra(&mut r)?,
        Suite::Counterexamples => counterexamples(&mut r)?,
    }
    r.ok = r.rows.iter().all(|row| row[2] == true.into());
    Ok(r)
}

fn sep_span(r: &mut Report, seed: u64, samples: usize) -> Result<(), CliError> {
    r.param("samples", samples);
    let instances = random_rose_instances(seed, samples, 12).map_err(err)?;
    let mut exact = 0;
    let mut bad = None;
    for (i, inst) in instances.iter().enumerate() {
        let c = verify_sep_span_chain(inst);
        exact += c.exact as usize;
        if (!c.holds || !c.exact) && bad.is_none() {
            let rows: Vec<String> =
                inst.dist.iter().map(|row| row.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")).collect();
            bad = Some(format!(
                "instance {i}: n={} eps={} span={}..{} sep={}..{} span_half={}..{}; d_n = [{}]",
                inst.n,
                inst.eps,
                c.span.lower,
                c.span.upper,
                c.sep.lower,
                c.sep.upper,
                c.span_half.lower,
                c.span_half.upper,
                rows.join("; ")
            ));
        }
    }
    let detail = bad.clone().unwrap_or_else(|| format!("{exact} exactly solved"));
    r.row(vec!["span(eps) <= sep(eps) <= span(eps/2)".into(), instances.len().into(), bad.is_none().into(), detail.into()]);
    Ok(())
}

fn cover_lemmas(r: &mut Report, seed: u64, samples: usize) -> Result<(), CliError> {
    r.param("samples", samples);
    let rep = verify_cover_lemmas(seed, samples).map_err(err)?;
    for c in rep.checks {
        r.row(vec![c.name.into(), c.instances.into(), c.holds.into(), c.counterexample.unwrap_or_default().into()]);
    }
    Ok(())
}

fn metrics(r: &mut Report) -> Result<(), CliError> {
    // ssep class count against maximum cliques of representatives
    let g = Ultragraph::rose(2).map_err(err)?;
    let systems = [
        ("first-difference", GraphShiftSystem::new(g.clone(), Metric::FirstDifference)),
        ("dx", GraphShiftSystem::enumerated(g.clone(), PathEnumeration::new(&g, EnumKind::default(), 300))),
    ];
    for (label, sys) in &systems {
        let mut cases = 0;
        let mut bad = None;
        for n in 1..=4 {
            for j in 1..=3 {
                let k = KSpec::budget(2);
                let fast = ssep_count(sys, &k, n, &dyadic(j)).map_err(err)?;
                let slow = ssep_bruteforce(sys, &k, n, &dyadic(j)).map_err(err)?;
                cases += 1;
                if fast.count != slow.count && bad.is_none() {
                    bad = Some(format!("n={n} eps=1/2^{j}: class count {} vs brute force {}", fast.count, slow.count));
                }
            }
        }
        let detail = bad.clone().unwrap_or_else(|| "rose-2, n <= 4, eps >= 1/8".into());
        r.row(vec![format!("ssep class count = brute force ({label})").into(), cases.into(), bad.is_none().into(), detail.into()]);
    }

    // d_X is an ultrametric on renewal representatives
    let g = Ultragraph::renewal();
    let en = PathEnumeration::new(&g, EnumKind::default(), 200);
    let pts = representatives(&g, 3, 2);
    let d: Vec<Vec<BigRational>> =
        pts.iter().map(|x| pts.iter().map(|y| dx_distance(&g, &en, x, y)).collect::<Result<_, _>>()).collect::<Result<_, _>>().map_err(err)?;
    let mut triples = 0;
    let mut bad = None;
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            if d[i][j] != d[j][i] && bad.is_none() {
                bad = Some(format!("asymmetric at {i},{j}"));
            }
            for k in 0..pts.len() {
                triples += 1;
                if d[i][j] > d[i][k].clone().max(d[k][j].clone()) && bad.is_none() {
                    bad = Some(format!("d({i},{j}) = {} above max(d({i},{k}), d({k},{j}))", d[i][j]));
                }
            }
        }
    }
    let detail = bad.clone().unwrap_or_else(|| format!("{} renewal points", pts.len()));
    r.row(vec!["d_X ultrametric".into(), triples.into(), bad.is_none().into(), detail.into()]);

    // x^k = e_k…, y^k = f_k…: d_X decreases to 0, the first-difference distance stays 1/2
    for g in [Ultragraph::ladder(), Ultragraph::double_chain()] {
        let en = PathEnumeration::new(&g, EnumKind::default(), 600);
        let mut last: Option<BigRational> = None;
        let mut ok = true;
        let mut shown = Vec::new();
        for k in 1..=8usize {
            let x = Ultrapath::new(&g, vec![EdgeId(2 * k - 2)], Tail::Canonical).map_err(err)?;
            let y = Ultrapath::new(&g, vec![EdgeId(2 * k - 1)], Tail::Canonical).map_err(err)?;
            let dx = dx_distance(&g, &en, &x, &y).map_err(err)?;
            ok &= first_difference(&g, &x, &y).map_err(err)? == dyadic(1);
            ok &= last.as_ref().is_none_or(|l| dx < *l);
            shown.push(format!("{:e}", to_f64(&dx)));
            last = Some(dx);
        }
        r.row(vec![
            format!("d_X -> 0 with first difference 1/2 ({})", g.name()).into(),
            8usize.into(),
            ok.into(),
            format!("d_X = [{}]", shown.join(", ")).into(),
        ]);
    }
    Ok(())
}

/// Depth-`m` word covers against `ssep` at `eps = 1/2^{m+2}`, half the
/// Lebesgue number of the cover, both at `n_max = 12`.
fn zebra(r: &mut Report) -> Result<(), CliError> {
    let n_max = 12;
    r.param("nmax", n_max);
    r.param("slack", ZEBRA_SLACK);
    let corpus = [
        Ultragraph::rose(2).map_err(err)?,
        Ultragraph::rose(3).map_err(err)?,
        Ultragraph::golden_mean(),
        Ultragraph::cycle(3).map_err(err)?,
        Ultragraph::ladder_finite(3).map_err(err)?,
        Ultragraph::disjoint_union(&[Ultragraph::rose(2).map_err(err)?, Ultragraph::golden_mean()]).map_err(err)?,
    ];
    for g in &corpus {
        let sys = GraphShiftSystem::new(g.clone(), Metric::FirstDifference);
        let k = KSpec::budget(g.edge_count().expect("finite corpus"));
        for m in 1..=3usize {
            let c = word_cover(g, m).map_err(err)?;
            let cover = cover_entropy_estimate(g, &c, n_max, DEFAULT_ATOM_BUDGET).map_err(err)?.estimate;
            let metric = entropy_estimate(&sys, &k, &[m as u32 + 2], n_max).map_err(err)?.per_eps[0].window_max;
            let holds = cover <= metric + ZEBRA_SLACK;
            r.row(vec![
                format!("{} depth {m}", g.name()).into(),
                n_max.into(),
                holds.into(),
                format!("cover {cover:.6} metric {metric:.6}").into(),
            ]);
        }
    }
    Ok(())
}

fn counterexamples(r: &mut Report) -> Result<(), CliError> {
    let mut exact = |label: &str, got: BigRational, want: BigRational| {
        let holds = got == want;
        r.row(vec![label.into(), 1usize.into(), holds.into(), format!("{got} (expected {want})").into()]);
    };
    let s = IntervalDoubling;
    let zero = s.point(0, 1).map_err(err)?;
    let quarter = s.point(1, 4).map_err(err)?;
    let p = s.point(6, 25).map_err(err)?;
    let d3 = |a, b| iterate_distance(&s, a, b, 3).map_err(err);
    exact("interval doubling d_3(0, 6/25)", d3(&zero, &p)?, rational(24, 25));
    exact("interval doubling d_3(0, 1/4) + d_3(1/4, 6/25)", d3(&zero, &quarter)? + d3(&quarter, &p)?, rational(13, 25));
    let b = PaddedBinary;
    let pt = |prefix: &str| BinaryPoint::eventually_periodic(prefix, "1").map_err(err);
    let (x, y, z) = (pt("000")?, pt("0000")?, pt("00")?);
    let d2 = |a, c| iterate_distance(&b, a, c, 2).map_err(err);
    exact("padded binary d_2(x, y)", d2(&x, &y)?, rational(1, 1));
    exact("padded binary d_2(x, z)", d2(&x, &z)?, rational(1, 4));
    exact("padded binary d_2(z, y)", d2(&z, &y)?, rational(1, 4));
    Ok(())
}
