//! ASCII braid diagrams.
//!
//! Strands run left to right on even rows, numbered from the top. Each letter
//! `σ_i^{±1}` occupies a three-column block crossing strands `i` and `i+1`:
//!
//! ```text
//! \ /        \ /
//!  \          /
//! / \        / \
//! σ_i        σ_i⁻¹
//! ```
//!
//! The middle character shows the strand on top: for `σ_i` the strand moving
//! down from position `i` passes over.

use crate::braid::BraidWord;

/// Renders `b` one letter at a time, left to right. Trailing blanks are trimmed.
pub fn render_braid(b: &BraidWord) -> String {
    let n = b.strands();
    let letters = b.word().letters();
    let rows = (2 * n).saturating_sub(1);
    let label_width = n.to_string().len();
    let mut lines: Vec<String> = (0..rows)
        .map(|r| {
            if r % 2 == 0 {
                format!("{:>label_width$} -", r / 2 + 1)
            } else {
                " ".repeat(label_width + 2)
            }
        })
        .collect();
    if letters.is_empty() {
        for (r, line) in lines.iter_mut().enumerate() {
            if r % 2 == 0 {
                line.push_str("---");
            }
        }
    }
    for letter in &letters {
        let top = 2 * letter.index;
        for (r, line) in lines.iter_mut().enumerate() {
            let block = if r == top {
                "\\ /"
            } else if r == top + 1 {
                if letter.inverse {
                    " / "
                } else {
                    " \\ "
                }
            } else if r == top + 2 {
                "/ \\"
            } else if r % 2 == 0 {
                "---"
            } else {
                "   "
            };
            line.push_str(block);
            line.push(if r % 2 == 0 { '-' } else { ' ' });
        }
    }
    let mut out = String::new();
    for line in lines {
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
