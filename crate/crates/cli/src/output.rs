//! Output documents: every subcommand renders both a text form and a JSON
//! form carrying a versioned `schema` field. The JSON structs round-trip
//! through serde so downstream tooling can parse them back.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use ordered_shuffle::{
    ConjectureScan, CycleStats, Deck, FixedPoset, Orbit, PeriodSet, PeriodicPoset, ShuffleParams,
    ShufflingPoset, TheoremReport, WeightFunction,
};

pub struct Document {
    pub text: String,
    pub json: Value,
}

fn doc<T: Serialize>(payload: &T, text: String) -> Document {
    Document {
        text,
        json: serde_json::to_value(payload).expect("document serializes"),
    }
}

#[derive(Serialize, Deserialize)]
pub struct RawDot {
    pub schema: String,
    pub dot: String,
}

pub fn raw_document(dot_source: String) -> Document {
    doc(
        &RawDot {
            schema: "ordered-shuffle/dot/v1".into(),
            dot: dot_source.clone(),
        },
        dot_source,
    )
}

#[derive(Serialize, Deserialize)]
pub struct ShuffleDoc {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub deck: String,
    pub result: String,
}

pub fn shuffle_document(params: &ShuffleParams, deck: &Deck, result: &Deck) -> Document {
    doc(
        &ShuffleDoc {
            schema: "ordered-shuffle/shuffle/v1".into(),
            n: params.n_cards,
            k: params.k,
            deck: deck.to_string(),
            result: result.to_string(),
        },
        format!("{result}\n"),
    )
}

#[derive(Serialize, Deserialize)]
pub struct OrbitDoc {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub deck: String,
    pub settle: usize,
    pub period: usize,
    pub cycle: Vec<String>,
}

pub fn orbit_document(params: &ShuffleParams, deck: &Deck, orbit: &Orbit) -> Document {
    let cycle: Vec<String> = orbit.cycle_decks.iter().map(Deck::to_string).collect();
    let mut text = format!(
        "deck:   {deck}\nsettle: {}\nperiod: {}\ncycle:\n",
        orbit.settle, orbit.period
    );
    for d in &cycle {
        text.push_str(&format!("  {d}\n"));
    }
    doc(
        &OrbitDoc {
            schema: "ordered-shuffle/orbit/v1".into(),
            n: params.n_cards,
            k: params.k,
            deck: deck.to_string(),
            settle: orbit.settle,
            period: orbit.period,
            cycle,
        },
        text,
    )
}

#[derive(Serialize, Deserialize)]
pub struct WeightDoc {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub method: String,
    pub values: Vec<i64>,
}

pub fn weight_document(params: &ShuffleParams, method: &str, wf: &WeightFunction) -> Document {
    doc(
        &WeightDoc {
            schema: "ordered-shuffle/weight/v1".into(),
            n: params.n_cards,
            k: params.k,
            method: method.into(),
            values: wf.values().to_vec(),
        },
        wf.table(),
    )
}

#[derive(Serialize, Deserialize)]
pub struct ValidateDoc {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub valid: bool,
    /// condition and column of the first violation, when invalid
    pub detail: Option<String>,
}

pub fn validate_document(params: &ShuffleParams, wf: &WeightFunction) -> Document {
    doc(
        &ValidateDoc {
            schema: "ordered-shuffle/validate-weight/v1".into(),
            n: params.n_cards,
            k: params.k,
            valid: true,
            detail: None,
        },
        format!("valid\n{}", wf.table()),
    )
}

pub fn invalid_weight_document(params: &ShuffleParams, detail: &str) -> Document {
    doc(
        &ValidateDoc {
            schema: "ordered-shuffle/validate-weight/v1".into(),
            n: params.n_cards,
            k: params.k,
            valid: false,
            detail: Some(detail.to_string()),
        },
        format!("invalid: {detail}\n"),
    )
}

#[derive(Serialize, Deserialize)]
pub struct PosetSummaryDoc {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub kind: String,
    pub method: String,
    pub nodes: usize,
    pub cover_edges: usize,
    /// level -> node count
    pub level_widths: BTreeMap<i64, usize>,
}

fn widths(levels: impl Iterator<Item = i64>) -> BTreeMap<i64, usize> {
    let mut widths = BTreeMap::new();
    for level in levels {
        *widths.entry(level).or_insert(0) += 1;
    }
    widths
}

fn poset_summary(summary: PosetSummaryDoc) -> Document {
    let mut text = format!(
        "kind:        {}\nweights:     {}\nnodes:       {}\ncover edges: {}\nlevels:\n",
        summary.kind, summary.method, summary.nodes, summary.cover_edges
    );
    for (level, width) in &summary.level_widths {
        text.push_str(&format!("  {level}: {width} node(s)\n"));
    }
    doc(&summary, text)
}

pub fn shuffling_poset_document(poset: &ShufflingPoset, method: &str) -> Document {
    poset_summary(PosetSummaryDoc {
        schema: "ordered-shuffle/poset/v1".into(),
        n: poset.params().n_cards,
        k: poset.params().k,
        kind: "shuffling".into(),
        method: method.into(),
        nodes: poset.params().n_cards,
        cover_edges: poset.column_edges().len(),
        level_widths: widths((0..poset.params().n_cards).map(|a| poset.weight_function().value(a))),
    })
}

pub fn fixed_poset_document(fp: &FixedPoset, method: &str) -> Document {
    poset_summary(PosetSummaryDoc {
        schema: "ordered-shuffle/poset/v1".into(),
        n: fp.params().n_cards,
        k: fp.params().k,
        kind: "fixed".into(),
        method: method.into(),
        nodes: fp.node_count(),
        cover_edges: fp.cover_edges().len(),
        level_widths: widths(fp.levels().iter().copied()),
    })
}

pub fn periodic_poset_document(pp: &PeriodicPoset, method: &str) -> Document {
    poset_summary(PosetSummaryDoc {
        schema: "ordered-shuffle/poset/v1".into(),
        n: pp.params().n_cards,
        k: pp.params().k,
        kind: "periodic".into(),
        method: method.into(),
        nodes: pp.node_count(),
        cover_edges: pp.cover_edges().len(),
        level_widths: widths(pp.levels().iter().copied()),
    })
}

#[derive(Serialize, Deserialize)]
pub struct CountDoc {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub j: u32,
    pub method: String,
    /// exact count in decimal
    pub count: String,
}

pub fn count_document(params: &ShuffleParams, j: u32, method: &str, count: &BigUint) -> Document {
    doc(
        &CountDoc {
            schema: "ordered-shuffle/count-fixed/v1".into(),
            n: params.n_cards,
            k: params.k,
            j,
            method: method.into(),
            count: count.to_string(),
        },
        format!("{count}\n"),
    )
}

#[derive(Serialize, Deserialize)]
pub struct EnumDoc {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub j: u32,
    pub method: String,
    pub count: usize,
    pub decks: Vec<String>,
}

pub fn enumeration_document(
    name: &str,
    params: &ShuffleParams,
    j: u32,
    method: &str,
    decks: &[Deck],
) -> Document {
    let decks: Vec<String> = decks.iter().map(Deck::to_string).collect();
    let mut text = String::new();
    for d in &decks {
        text.push_str(d);
        text.push('\n');
    }
    doc(
        &EnumDoc {
            schema: format!("ordered-shuffle/{name}/v1"),
            n: params.n_cards,
            k: params.k,
            j,
            method: method.into(),
            count: decks.len(),
            decks,
        },
        text,
    )
}

#[derive(Serialize, Deserialize)]
pub struct PeriodsDoc {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub method: String,
    pub lcm_cycles: u64,
    pub divisors: Vec<u64>,
}

pub fn periods_document(params: &ShuffleParams, method: &str, periods: &PeriodSet) -> Document {
    let list: Vec<String> = periods.divisors.iter().map(u64::to_string).collect();
    doc(
        &PeriodsDoc {
            schema: "ordered-shuffle/periods/v1".into(),
            n: params.n_cards,
            k: params.k,
            method: method.into(),
            lcm_cycles: periods.lcm_cycles,
            divisors: periods.divisors.clone(),
        },
        format!(
            "cycle-length lcm: {}\npossible periods: {}\n",
            periods.lcm_cycles,
            list.join(" ")
        ),
    )
}

#[derive(Serialize, Deserialize)]
pub struct MakePeriodDoc {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub d: u64,
    pub deck: String,
    pub settle: usize,
    pub period: u64,
}

pub fn make_period_document(params: &ShuffleParams, d: u64, deck: &Deck) -> Document {
    doc(
        &MakePeriodDoc {
            schema: "ordered-shuffle/make-period/v1".into(),
            n: params.n_cards,
            k: params.k,
            d,
            deck: deck.to_string(),
            settle: 0,
            period: d,
        },
        format!("deck:   {deck}\nsettle: 0\nperiod: {d}\n"),
    )
}

#[derive(Serialize, Deserialize)]
pub struct TheoremDoc {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub t: u32,
    pub q: usize,
    pub order: u64,
    pub histogram: BTreeMap<u64, usize>,
    pub all_lengths_divide_order: bool,
    pub order_is_attained: bool,
    pub t_divides_order: bool,
    pub pass: bool,
}

pub fn theorem_document(report: &TheoremReport) -> Document {
    let p = &report.params;
    let hist: Vec<String> = report
        .stats
        .histogram
        .iter()
        .map(|(len, count)| format!("{len}x{count}"))
        .collect();
    let text = format!(
        "N={} k={} t={} q={}\nord_{}({}) = {}\ncycle lengths (length x count): {}\nall lengths divide order: {}\norder attained: {}\nt divides order: {}\n{}\n",
        p.n_cards,
        p.k,
        p.t,
        p.q,
        p.k,
        p.n_cards - p.q,
        report.order,
        hist.join(" "),
        report.all_lengths_divide_order,
        report.order_is_attained,
        report.t_divides_order,
        if report.pass { "PASS" } else { "FAIL" }
    );
    doc(
        &TheoremDoc {
            schema: "ordered-shuffle/verify-theorem/v1".into(),
            n: p.n_cards,
            k: p.k,
            t: p.t,
            q: p.q,
            order: report.order,
            histogram: report.stats.histogram.clone(),
            all_lengths_divide_order: report.all_lengths_divide_order,
            order_is_attained: report.order_is_attained,
            t_divides_order: report.t_divides_order,
            pass: report.pass,
        },
        text,
    )
}

#[derive(Serialize, Deserialize)]
pub struct CycleStatsDoc {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub method: String,
    pub histogram: BTreeMap<u64, usize>,
    pub lcm: u64,
    pub max_length: u64,
    pub lcm_equals_max: bool,
}

pub fn cycle_stats_document(params: &ShuffleParams, method: &str, stats: &CycleStats) -> Document {
    let hist: Vec<String> = stats
        .histogram
        .iter()
        .map(|(len, count)| format!("{len}x{count}"))
        .collect();
    doc(
        &CycleStatsDoc {
            schema: "ordered-shuffle/cycle-stats/v1".into(),
            n: params.n_cards,
            k: params.k,
            method: method.into(),
            histogram: stats.histogram.clone(),
            lcm: stats.lcm,
            max_length: stats.max_length,
            lcm_equals_max: stats.lcm_equals_max,
        },
        format!(
            "cycle lengths (length x count): {}\nlcm: {}\nmax: {}\nlcm equals max: {}\n",
            hist.join(" "),
            stats.lcm,
            stats.max_length,
            stats.lcm_equals_max
        ),
    )
}

#[derive(Serialize, Deserialize)]
pub struct ConjectureDoc {
    pub schema: String,
    pub max_n: usize,
    pub instances_checked: usize,
    pub counterexamples: Vec<CounterexampleDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct CounterexampleDoc {
    pub n: usize,
    pub k: usize,
    pub values: Vec<i64>,
}

pub fn conjecture_document(scan: &ConjectureScan) -> Document {
    let counterexamples: Vec<CounterexampleDoc> = scan
        .counterexamples
        .iter()
        .map(|c| CounterexampleDoc {
            n: c.n_cards,
            k: c.k,
            values: c.values.to_vec(),
        })
        .collect();
    let mut text = format!(
        "checked {} instances with k | N up to N = {}\n",
        scan.instances_checked, scan.max_n
    );
    if counterexamples.is_empty() {
        text.push_str("no asymmetric generator output found\n");
    } else {
        for c in &counterexamples {
            text.push_str(&format!("ASYMMETRIC: N={} k={} values {:?}\n", c.n, c.k, c.values));
        }
    }
    doc(
        &ConjectureDoc {
            schema: "ordered-shuffle/conjecture-scan/v1".into(),
            max_n: scan.max_n,
            instances_checked: scan.instances_checked,
            counterexamples,
        },
        text,
    )
}

#[derive(Serialize, Deserialize)]
pub struct MaxSettleDoc {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub j: u32,
    pub max_settle: usize,
    pub witness: String,
}

pub fn max_settle_document(
    params: &ShuffleParams,
    j: u32,
    settle: usize,
    witness: &Deck,
) -> Document {
    doc(
        &MaxSettleDoc {
            schema: "ordered-shuffle/max-settle/v1".into(),
            n: params.n_cards,
            k: params.k,
            j,
            max_settle: settle,
            witness: witness.to_string(),
        },
        format!("max settle: {settle}\nwitness:    {witness}\n"),
    )
}
