//! Printing denotations: element labels, exact distributions and matrices.

use qpel_core::Type;
use qpel_semantics::backend::quantum::{Block, Blocks};
use qpel_semantics::backend::set::Func;
use qpel_semantics::backend::stochastic::Stoch;
use qpel_semantics::interp::labels;
use num_traits::Zero;

fn names(ty: &Type, n: usize) -> Vec<String> {
    labels(ty).unwrap_or_else(|| (0..n).map(|i| format!("#{i}")).collect())
}

pub fn element(ty: &Type, f: &Func) -> String {
    names(ty, f.cod)[f.map[0]].clone()
}

pub fn distribution(ty: &Type, s: &Stoch) -> String {
    let names = names(ty, s.cols);
    s.row(0)
        .iter()
        .zip(&names)
        .filter(|(p, _)| !p.is_zero())
        .map(|(p, l)| format!("{l} : {p}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Six significant digits, with negligible values shown as zero.
pub fn real(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let v: f64 = format!("{x:.5e}").parse().unwrap();
    format!("{v}")
}

fn entry(re: f64, im: f64) -> String {
    match (real(re).as_str(), real(im)) {
        (r, i) if i == "0" => r.to_string(),
        ("0", i) => format!("{i}i"),
        (r, i) if i.starts_with('-') => format!("{r}{i}i"),
        (r, i) => format!("{r}+{i}i"),
    }
}

pub fn matrix(m: &Block) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|i| {
            let row: Vec<String> = (0..m.ncols()).map(|j| entry(m[(i, j)].re, m[(i, j)].im)).collect();
            format!("[{}]", row.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// One name per block of the density matrices of `ty`, with `q` marking a qubit.
fn block_labels(ty: &Type) -> Vec<String> {
    match ty {
        Type::Unit => vec!["<>".into()],
        Type::Qbit => vec!["q".into()],
        Type::Sum(a, b) => {
            let wrap = |tag: &str, s: String| {
                if s.starts_with('<') || s.starts_with('(') {
                    format!("{tag}{s}")
                } else {
                    format!("{tag}({s})")
                }
            };
            let mut out: Vec<String> = block_labels(a).into_iter().map(|s| wrap("inl", s)).collect();
            out.extend(block_labels(b).into_iter().map(|s| wrap("inr", s)));
            out
        }
        Type::Tensor(a, b) => {
            let lb = block_labels(b);
            block_labels(a)
                .into_iter()
                .flat_map(|x| lb.iter().map(move |y| format!("({x}, {y})")))
                .collect()
        }
    }
}

pub fn blocks(ty: &Type, bs: &Blocks) -> String {
    if bs.len() == 1 {
        return matrix(&bs[0]);
    }
    let names = block_labels(ty);
    bs.iter()
        .zip(&names)
        .map(|(b, l)| format!("{l} : {}", matrix(b)))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn max_abs_deviation(a: &Blocks, b: &Blocks) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y.iter()).map(|(u, v)| (u - v).norm()))
        .fold(0.0, f64::max)
}
