//! Graphviz DOT rendering of the three poset kinds.
//!
//! Output is deterministic: nodes ascending, one `rank=same` group per level
//! with the lowest weight at the bottom, so identical inputs give identical
//! bytes.

use std::collections::BTreeMap;

use crate::poset::{FixedPoset, PeriodicPoset, ShufflingPoset};

fn rank_groups(levels: impl Iterator<Item = (usize, i64)>) -> BTreeMap<i64, Vec<usize>> {
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (node, level) in levels {
        groups.entry(level).or_default().push(node);
    }
    groups
}

fn write_ranks(out: &mut String, groups: &BTreeMap<i64, Vec<usize>>, prefix: &str) {
    for (level, nodes) in groups {
        let ids: Vec<String> = nodes.iter().map(|n| format!("{prefix}{n}")).collect();
        out.push_str(&format!(
            "  {{ rank=same; // level {level}\n    {}; }}\n",
            ids.join("; ")
        ));
    }
}

/// Subscript nodes with directed successor edges and dashed same-column
/// edges between levels.
pub fn shuffling_poset_dot(poset: &ShufflingPoset) -> String {
    let wf = poset.weight_function();
    let n = poset.params().n_cards;
    let mut out = String::from("digraph shuffling_poset {\n  rankdir=BT;\n  node [shape=circle];\n");
    let groups = rank_groups((0..n).map(|a| (a, wf.value(a))));
    write_ranks(&mut out, &groups, "s");
    for a in 0..n {
        out.push_str(&format!("  s{a} [label=\"{a}\"];\n"));
    }
    for a in 0..n {
        out.push_str(&format!("  s{a} -> s{};\n", poset.successor(a)));
    }
    for (a, b) in poset.column_edges() {
        let (low, high) = if wf.value(a) <= wf.value(b) {
            (a, b)
        } else {
            (b, a)
        };
        out.push_str(&format!(
            "  s{low} -> s{high} [dir=none, style=dashed];\n"
        ));
    }
    out.push_str("}\n");
    out
}

/// Cycle nodes labeled with their member subscripts, cover edges drawn
/// upward from lower weight to higher.
pub fn fixed_poset_dot(fp: &FixedPoset) -> String {
    let mut out = String::from("digraph fixed_poset {\n  rankdir=BT;\n  node [shape=box];\n");
    let groups = rank_groups(
        (0..fp.node_count()).map(|c| (c, fp.levels()[c])),
    );
    write_ranks(&mut out, &groups, "c");
    for c in 0..fp.node_count() {
        let members: Vec<String> = fp.cycle_members(c).iter().map(usize::to_string).collect();
        out.push_str(&format!("  c{c} [label=\"{{{}}}\"];\n", members.join(",")));
    }
    for &(low, high) in fp.cover_edges() {
        out.push_str(&format!("  c{low} -> c{high};\n"));
    }
    out.push_str("}\n");
    out
}

/// Subscript nodes with cover edges drawn upward from lower weight to higher.
pub fn periodic_poset_dot(pp: &PeriodicPoset) -> String {
    let mut out = String::from("digraph periodic_poset {\n  rankdir=BT;\n  node [shape=circle];\n");
    let groups = rank_groups(pp.levels().iter().copied().enumerate());
    write_ranks(&mut out, &groups, "s");
    for a in 0..pp.node_count() {
        out.push_str(&format!("  s{a} [label=\"{a}\"];\n"));
    }
    for &(low, high) in pp.cover_edges() {
        out.push_str(&format!("  s{low} -> s{high};\n"));
    }
    out.push_str("}\n");
    out
}
