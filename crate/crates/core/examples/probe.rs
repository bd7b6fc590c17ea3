use isq_core::estimator::estimate_with_advice;
use isq_core::generators::gen_erdos_renyi;
use isq_core::oracle::InstrumentedOracle;
use isq_core::params::{Params, Tunables};
use std::time::Instant;

fn main() {
    let tun = Tunables { c_li: 2.0e-10, ..Tunables::desk() };
    let n = 128usize;
    let g = gen_erdos_renyi(n, 640.0 / 8128.0, 7).unwrap();
    eprintln!("m = {}", g.edge_count());
    let eps_in = 0.3 / 11.0;
    for bound in [8128u64, 4064, 2560] {
        let p = Params::new(eps_in, n, bound, tun).unwrap();
        eprintln!(
            "bound {bound}: split_exp {} top {} frac {} t_chd {:.0} t_cld(a^-1) {:.0} t_chl {:.0} N {:.2e}",
            p.split_exp, p.top_exp, p.frac_exp,
            p.check_high_iters(), p.check_low_iters(p.alpha_pow(-1)), p.check_hl_iters(),
            p.hde_schedule(p.split_exp + 1, 1.0).iters,
        );
        let mut o = InstrumentedOracle::new(&g);
        let mut rng = isq_core::trials::estimator_rng(1);
        let t0 = Instant::now();
        let out = estimate_with_advice(eps_in, n, bound, &mut o, tun, &mut rng).unwrap();
        eprintln!(
            "  -> m_hat {:.1} queries {} wall {:.2}s",
            out.estimate, out.is_queries, t0.elapsed().as_secs_f64()
        );
    }
}
