use serde::Serialize;
use serde_json::Value;

/// A command's result in both output formats. `ok` is false when a checked
/// property failed.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Report {
    pub fn new(json: impl Serialize, text: String, ok: bool) -> Self {
        Report {
            json: serde_json::to_value(json).expect("reports serialize"),
            text,
            ok,
        }
    }

    /// Pretty JSON; object keys come out sorted.
    pub fn json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// A `[p][q]` grid printed with `q` growing upwards, cells with `p + q > n`
/// left blank.
pub fn grid_text(title: &str, grid: &[Vec<usize>], pmax: usize, qmax: usize, n: usize) -> String {
    let mut s = format!("{title}\n");
    for q in (0..=qmax).rev() {
        s.push_str(&format!("  q={q:<2}|"));
        for (p, col) in grid.iter().enumerate().take(pmax + 1) {
            if p + q <= n {
                s.push_str(&format!(" {:>3}", col.get(q).copied().unwrap_or(0)));
            } else {
                s.push_str("    ");
            }
        }
        s.push('\n');
    }
    s.push_str("       ");
    for p in 0..=pmax.min(grid.len().saturating_sub(1)) {
        s.push_str(&format!(" p={p:<1} "));
    }
    s.push('\n');
    s
}
