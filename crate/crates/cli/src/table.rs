use rayon::prelude::*;

use monotone_tr::hurwitz::{count_connected, count_disconnected, transposition_count, Partition, SizeGuard};
use monotone_tr::schur::PartitionFunctionTruncation;
use monotone_tr::{format_rational, Rational, Result};

use crate::report::{Table, TableRow, SCHEMA};

struct Row {
    g: i64,
    mu: Partition,
    m: u32,
    connected: Rational,
    disconnected: Rational,
}

/// Every row index `i` with `ceil((i+1) f) > ceil(i f)`: spreads the
/// sample evenly without randomness.
fn sampled(count: usize, fraction: f64) -> Vec<usize> {
    let f = fraction.clamp(0.0, 1.0);
    (0..count).filter(|&i| ((i + 1) as f64 * f).ceil() > (i as f64 * f).ceil()).collect()
}

fn within_guard(row: &Row, guard: &SizeGuard) -> bool {
    row.mu.size() <= guard.max_size && row.m <= guard.max_transpositions
}

pub fn build(q: u32, gmax: u32, mumax: u32, sample: f64) -> Result<Table> {
    let mut keys = Vec::new();
    for g in 0..=gmax as i64 {
        for d in (1..=mumax).filter(|d| d % q == 0) {
            for mu in Partition::all(d) {
                let m = transposition_count(g, &mu, q).expect("q divides |mu|");
                keys.push((g, mu, m));
            }
        }
    }
    let order = keys.iter().map(|k| k.2 as usize).max().unwrap_or(0);
    let z = PartitionFunctionTruncation::build(q, mumax, order);
    let connected = z.connected_from_disconnected();
    let mut rows = Vec::with_capacity(keys.len());
    for (g, mu, m) in keys {
        let c = connected.get(&(g, mu.clone())).cloned().unwrap_or_else(|| Rational::from_integer(0.into()));
        let d = z.extract_disconnected(g, &mu)?;
        rows.push(Row { g, mu, m, connected: c, disconnected: d });
    }

    let guard = SizeGuard::default();
    let eligible: Vec<usize> = (0..rows.len()).filter(|&i| within_guard(&rows[i], &guard)).collect();
    let picked: Vec<usize> = sampled(eligible.len(), sample).into_iter().map(|i| eligible[i]).collect();
    let checks: Vec<(usize, bool)> = picked
        .par_iter()
        .map(|&i| {
            let r = &rows[i];
            let c = count_connected(r.g, &r.mu, q, guard)?;
            let d = count_disconnected(r.g, &r.mu, q, guard)?;
            Ok((i, c == r.connected && d == r.disconnected))
        })
        .collect::<Result<_>>()?;
    let mut brute = vec![None; rows.len()];
    for (i, ok) in checks {
        brute[i] = Some(ok);
    }

    let agree = brute.iter().all(|b| b.unwrap_or(true));
    let rows = rows
        .into_iter()
        .zip(brute)
        .map(|(r, b)| TableRow {
            q,
            g: r.g,
            mu: r.mu.to_string(),
            connected: format_rational(&r.connected),
            disconnected: format_rational(&r.disconnected),
            brute: b,
        })
        .collect();
    Ok(Table { schema: SCHEMA, kind: "table", q, gmax, mumax, sample, rows, agree })
}

pub fn write_csv(table: &Table, out: impl std::io::Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["q", "g", "mu", "connected", "disconnected"])?;
    for r in &table.rows {
        let mu = r.mu.replace(',', ";");
        w.write_record([r.q.to_string(), r.g.to_string(), mu, r.connected.clone(), r.disconnected.clone()])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_even() {
        assert_eq!(sampled(10, 0.0), Vec::<usize>::new());
        assert_eq!(sampled(4, 1.0), vec![0, 1, 2, 3]);
        assert_eq!(sampled(10, 0.2).len(), 2);
        assert_eq!(sampled(10, 0.1), vec![0]);
        assert_eq!(sampled(20, 0.1), vec![0, 10]);
    }
}
