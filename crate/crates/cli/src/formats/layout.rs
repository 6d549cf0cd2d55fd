//! Side-car file mapping reduction nonterminals to their roles.

use repfree_core::ReductionLayout;

/// One `name<TAB>role` line per nonterminal, in grammar order.
pub fn render_layout(layout: &ReductionLayout) -> String {
    layout
        .entries()
        .map(|(name, role)| format!("{name}\t{role}\n"))
        .collect()
}
