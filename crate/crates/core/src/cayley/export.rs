use std::fmt::Write;

use super::ball::BallGraph;
use super::relative::RelBallGraph;
use crate::words::Word;

/// `vertex <id> <word>` and `sedge <id> <id> <gen>` lines; the identity is
/// written as `1`.
pub fn export_ball(ball: &BallGraph, names: &[String]) -> String {
    let mut out = String::new();
    for v in 0..ball.len() as u32 {
        let w = ball.word(v);
        let text = if w.is_empty() {
            "1".to_string()
        } else {
            crate::words::format_word(w, names)
        };
        writeln!(out, "vertex {v} {text}").unwrap();
    }
    for (u, v, l) in ball.s_edges() {
        writeln!(out, "sedge {u} {v} {}", crate::words::format_word(&Word::letter(l), names)).unwrap();
    }
    out
}

/// The ball export followed by `hedge <id> <id> <parabolic> <coset>` lines
/// (parabolics numbered from 1).
pub fn export_relative_ball(rel: &RelBallGraph, names: &[String]) -> String {
    let mut out = export_ball(&rel.base, names);
    for (u, v, i, c) in rel.h_edges() {
        writeln!(out, "hedge {u} {v} {} {c}", i + 1).unwrap();
    }
    out
}
