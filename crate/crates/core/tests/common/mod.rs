#![allow(dead_code)]

use helly_core::SetSystem;
use proptest::prelude::*;

/// Ground size and member index lists, the oracle's representation.
pub fn plain(s: &SetSystem) -> (usize, Vec<Vec<usize>>) {
    let members = s.members().iter().map(|m| m.elements.iter().collect()).collect();
    (s.ground_len(), members)
}

pub fn system_from_rows(ground: usize, rows: &[Vec<bool>]) -> SetSystem {
    let labels = (0..ground).map(|i| format!("x{i}")).collect();
    let members = rows
        .iter()
        .enumerate()
        .map(|(j, row)| {
            let elems = row.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
            (format!("F{j}"), elems)
        })
        .collect();
    SetSystem::new(labels, members).unwrap()
}

/// Systems with `1..=max_ground` points and `1..=max_members` members.
pub fn arb_system(max_ground: usize, max_members: usize) -> impl Strategy<Value = SetSystem> {
    (1..=max_ground, 1..=max_members).prop_flat_map(|(g, m)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), g), m)
            .prop_map(move |rows| system_from_rows(g, &rows))
    })
}
