//! Plain-text count matrices with ranks down and sizes across.

use std::collections::BTreeMap;

fn render(head: &str, sizes: &[usize], body: Vec<(String, Vec<String>)>) -> String {
    let width = body
        .iter()
        .flat_map(|(_, cells)| cells.iter().map(String::len))
        .chain(sizes.iter().map(|n| n.to_string().len()))
        .max()
        .unwrap_or(1);
    let lead = body.iter().map(|(l, _)| l.len()).chain([head.len()]).max().unwrap_or(1);
    let mut out = format!("{head:<lead$}");
    for n in sizes {
        out += &format!(" {n:>width$}");
    }
    out.push('\n');
    for (label, cells) in body {
        out += &format!("{label:<lead$}");
        for c in cells {
            out += &format!(" {c:>width$}");
        }
        out = out.trim_end().to_string();
        out.push('\n');
    }
    out
}

/// Counts per `(n, rank)` for `n <= max_n`, zero cells left blank, with a totals row.
pub fn format_count_matrix(counts: &BTreeMap<(usize, usize), u64>, max_n: usize) -> String {
    let sizes: Vec<usize> = (0..=max_n).collect();
    let cell = |n: usize, r: usize| counts.get(&(n, r)).copied().unwrap_or(0);
    let mut body: Vec<(String, Vec<String>)> = (0..=max_n)
        .map(|r| {
            let cells = sizes.iter().map(|&n| match cell(n, r) {
                0 => String::new(),
                c => c.to_string(),
            });
            (r.to_string(), cells.collect())
        })
        .collect();
    let totals = sizes.iter().map(|&n| (0..=n).map(|r| cell(n, r)).sum::<u64>().to_string());
    body.push(("Total".into(), totals.collect()));
    render("r\\n", &sizes, body)
}

/// Several counts per cell joined by `/`, for ranks `ranks` and sizes
/// `min_n..=max_n`; cells with `n < rank` are blank.
pub fn format_quad_matrix(
    layers: &[BTreeMap<(usize, usize), u64>],
    ranks: std::ops::RangeInclusive<usize>,
    min_n: usize,
    max_n: usize,
) -> String {
    let sizes: Vec<usize> = (min_n..=max_n).collect();
    let body = ranks
        .map(|r| {
            let cells = sizes.iter().map(|&n| {
                if n < r {
                    return String::new();
                }
                let vals: Vec<String> =
                    layers.iter().map(|l| l.get(&(n, r)).copied().unwrap_or(0).to_string()).collect();
                vals.join("/")
            });
            (r.to_string(), cells.collect())
        })
        .collect();
    render("r\\n", &sizes, body)
}
