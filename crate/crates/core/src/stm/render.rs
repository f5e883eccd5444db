use std::fmt::Write;

use super::{StmConfig, StmOutcome, Sym};

fn mark(cells: impl Iterator<Item = (bool, char)>) -> String {
    cells.map(|(h, c)| if h { format!("[{c}]") } else { c.to_string() }).collect()
}

/// Renders one configuration; every head position is shown as `[x]`.
pub fn render_config(c: &StmConfig, k: usize) -> String {
    let n = c.input.len();
    let input = mark((0..n + 2).map(|i| {
        let s = if i == 0 || i > n { Sym::Blank } else { c.input[i - 1] };
        (i == c.input_head, s.glyph())
    }));
    let output = mark(
        std::iter::once((false, '□'))
            .chain(c.output.iter().map(|s| (false, s.glyph())))
            .chain(std::iter::once((true, '□'))),
    );
    let lo = c.planar.keys().next().copied().unwrap_or(c.head).min(c.head) - 1;
    let hi = c.planar.keys().next_back().copied().unwrap_or(c.head).max(c.head) + 1;
    let mut s = format!("  input:  {input}\n  output: {output}\n");
    for row in 0..k {
        let cells = mark((lo..=hi).map(|col| {
            let sym = c.planar.get(&col).map_or(Sym::Blank, |v| v[row]);
            (col == c.head, sym.glyph())
        }));
        let _ = writeln!(s, "  row {}:  {cells}", row + 1);
    }
    s
}

/// Renders the accepting run of an outcome, one block per configuration.
pub fn render_trace(outcome: &StmOutcome, k: usize) -> String {
    let mut s = String::new();
    for (i, (label, c)) in outcome.trace.iter().enumerate() {
        let label = match (i, label) {
            (0, _) => "start".to_string(),
            (_, None) => "1".to_string(),
            (_, Some(u)) => u.to_string(),
        };
        let _ = writeln!(s, "step {i} [{label}] state {}", c.control);
        s.push_str(&render_config(c, k));
    }
    s
}
