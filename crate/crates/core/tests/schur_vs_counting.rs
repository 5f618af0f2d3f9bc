use monotone_tr::hurwitz::{count_table, Partition, SizeGuard};
use monotone_tr::schur::PartitionFunctionTruncation;
use monotone_tr::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

fn normalized(mu: &Partition, raw: u64) -> Rational {
    let fact: BigInt = (1..=mu.size() as u64).map(BigInt::from).product();
    Rational::new(mu.aut() * BigInt::from(raw), fact)
}

#[test]
fn partition_function_reproduces_enumeration() {
    let max_m = 8usize;
    for q in 1..=3u32 {
        let z = PartitionFunctionTruncation::build(q, 6, max_m);
        let log = z.log();
        for d in (q..=6).step_by(q as usize) {
            for m in 0..=max_m {
                let table = count_table(q, d, m as u32, SizeGuard::default()).unwrap();
                for mu in Partition::all(d) {
                    let (all, conn) = table.get(&mu).copied().unwrap_or((0, 0));
                    let aut = Rational::from_integer(mu.aut());
                    let disc = &aut * z.coefficient(&mu, m).unwrap();
                    let con = &aut * log.coefficient(&mu, m).unwrap();
                    assert_eq!(disc, normalized(&mu, all), "q={q} mu={mu} m={m}");
                    assert_eq!(con, normalized(&mu, conn), "q={q} mu={mu} m={m}");
                    let twice_g = m as i64 + 2 - mu.len() as i64 - (d / q) as i64;
                    if twice_g < 0 {
                        assert!(con.is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn one_part_genus_zero_matches_z_to_the_q() {
    use monotone_tr::algebra::{lagrange_invert, Series};
    let w = 9u32;
    for q in 1..=3u32 {
        let z = PartitionFunctionTruncation::build(q, w, w as usize + 2);
        let conn = z.connected_from_disconnected();
        let mut x_of_z = vec![Rational::zero(); q as usize + 2];
        x_of_z[1] = Rational::from_integer(1.into());
        x_of_z[q as usize + 1] = Rational::from_integer((-1).into());
        let x = Series::exact(0, x_of_z, Rational::zero());
        let zx = lagrange_invert(&x, w as i64).unwrap();
        let u = zx.pow(q, w as i64 + 1);
        for k in 1..=w {
            let mu = Partition::new(vec![k]);
            let lhs = conn
                .get(&(0, mu))
                .map(|h| h * Rational::from_integer(k.into()))
                .unwrap_or_else(Rational::zero);
            assert_eq!(&lhs, u.coeff(k as i64), "q={q} k={k}");
        }
    }
}
