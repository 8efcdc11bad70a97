//! Acceptance checks, one line per criterion. Runs as a plain binary so that every criterion
//! is reported even when an earlier one fails.

use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::Rng;
use realstack_cli::dispatch;
use realstack_core::cohomology::h1;
use realstack_core::curve::{inertia_factorization, kummer};
use realstack_core::gerbe::base_change_sigma;
use realstack_core::group::{
    automorphisms, catalog, cyclic, elementary_abelian_2, involutions, Automorphism, GGroup,
};
use realstack_core::quotient::{real_locus, torsor_oracle, FiniteGSpace};
use realstack_search::generate::{
    gerbe_with_signature, random_abelian_curve, signatures, BandCache, SpaceUniverse,
};
use realstack_search::{instance_rng, run, Campaign, Kind};
use serde_json::Value;

const SEED: u64 = 20_240_611;

type Check = Result<String, String>;

/// Number, name, check and optional time limit.
type Criterion = (u32, &'static str, fn() -> Check, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn example(name: &str) -> Result<Value, String> {
    let out = dispatch(["example", name]);
    let v: Value =
        serde_json::from_str(&out.stdout).map_err(|_| format!("{name}: {}", out.stderr.trim()))?;
    ensure(out.code == 0 && v["matches"] == true, || {
        format!("{name} does not match its golden output")
    })?;
    Ok(v["output"].clone())
}

fn cohomology_goldens() -> Check {
    let c2 = h1(&GGroup::trivial_action(cyclic(2).unwrap())).len();
    ensure(c2 == 2, || format!("trivial Z/2 gave {c2} classes"))?;
    let swap = GGroup::from_images(elementary_abelian_2(2).unwrap(), vec![0, 2, 1, 3]).unwrap();
    let v4 = h1(&swap).len();
    ensure(v4 == 1, || format!("swapped Z/2 x Z/2 gave {v4} classes"))?;
    for n in 1..=12 {
        let g = cyclic(n).unwrap();
        let k = h1(&GGroup::new(g.clone(), Automorphism::inversion(&g).unwrap()).unwrap()).len();
        let want = if n % 2 == 0 { 2 } else { 1 };
        ensure(k == want, || {
            format!("C{n} with inversion gave {k}, expected {want}")
        })?;
    }
    let cli = example("h1_c2")?;
    ensure(cli["h1"] == 2, || {
        "h1 --group C2 --sigma id did not report 2".into()
    })?;
    Ok("C2 -> 2, V4 swap -> 1, Cn inversion by parity for n <= 12".into())
}

fn oracle_equivalence() -> Check {
    let universe = SpaceUniverse::new(8, 6);
    let exhaustive = universe.enumerate();
    let random: Vec<FiniteGSpace> = (0..1000)
        .map(|i| universe.sample(&mut instance_rng(SEED, i)))
        .collect();
    for (i, s) in exhaustive.iter().chain(&random).enumerate() {
        let (a, b) = (real_locus(s).total(), torsor_oracle(s).len());
        ensure(a == b, || {
            format!("instance {i}: decomposition {a}, oracle {b}")
        })?;
    }
    Ok(format!(
        "{} spaces up to isomorphism + {} random, all equal",
        exhaustive.len(),
        random.len()
    ))
}

fn counting_inequality() -> Check {
    let s = run(&Campaign {
        workers: 4,
        ..Campaign::new(Kind::Bgamma, SEED, 0)
    });
    ensure(s.violations.is_empty(), || {
        format!(
            "{} violations, first {:?}",
            s.violations.len(),
            s.violations[0]
        )
    })?;
    Ok(format!(
        "{} (group, involution) pairs of order <= 24",
        s.checked
    ))
}

fn stacky_curve_goldens() -> Check {
    let m = example("moduli_a1")?;
    ensure(
        m["inertia"] == 8 && m["verdict"]["status"] == "holds",
        || format!("moduli_a1: {}", m["verdict"]),
    )?;
    let e = example("elliptic_kummer_max")?;
    ensure(
        e["inertia"] == 6 && e["real"]["h_star"] == 4 && e["verdict"]["status"] == "holds",
        || format!("elliptic_kummer_max: {}", e["verdict"]),
    )?;
    ensure(
        kummer::real_h_star(1, 1) == Ok(4) && kummer::real_h_star_brute_force(1, 1) == Ok(4),
        || "closed form and triangulation disagree for the elliptic case".into(),
    )?;
    Ok("moduli_a1 inertia 8; elliptic_kummer_max real 4, inertia 6; both hold".into())
}

fn factorization() -> Check {
    for i in 0..200 {
        let spec = random_abelian_curve(&mut instance_rng(SEED, i));
        let f = inertia_factorization(&spec).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(
            f.holds && f.inertia == spec.kernel_order as u64 * f.faithful_inertia,
            || format!("instance {i}: {f:?}"),
        )?;
    }
    Ok("200 abelian-stabilizer curves, inertia = #K x faithful inertia".into())
}

fn gerbe_goldens() -> Check {
    let e1 = example("enriques_1")?;
    ensure(
        e1["real"] == 48 && e1["inertia"] == 56 && e1["verdict"]["status"] == "holds",
        || format!("enriques_1: {}", e1["verdict"]),
    )?;
    let e2 = example("enriques_2")?;
    let comps = e2["components"]
        .as_array()
        .ok_or("enriques_2 has no components")?;
    let census: Vec<(Vec<u64>, u64)> = comps
        .iter()
        .map(|c| {
            let sizes = c["orbit_sizes"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap())
                .collect();
            (sizes, c["h_star"].as_u64().unwrap())
        })
        .collect();
    let want: Vec<(Vec<u64>, u64)> = vec![
        (vec![2, 1, 1], 8),
        (vec![2, 1, 1], 8),
        (vec![2, 1, 1], 8),
        (vec![1, 1, 1, 1], 8),
        (vec![1], 2),
        (vec![1], 3),
    ];
    ensure(census == want, || format!("enriques_2 census {census:?}"))?;
    ensure(e2["verdict"]["status"] == "holds", || {
        format!("enriques_2: {}", e2["verdict"])
    })?;
    Ok("enriques_1 48 <= 56; enriques_2 census 3x(2+3+3), 8, 2, 3 and holds".into())
}

fn gerbe_fuzz() -> Check {
    let c = Campaign {
        max_rank: 3,
        max_genus: 4,
        workers: 4,
        ..Campaign::new(Kind::Gerbe2torsion, SEED, 1000)
    };
    let s = run(&c);
    ensure(s.checked + s.duplicates == 1000, || {
        "instance count mismatch".into()
    })?;
    ensure(s.violations.is_empty(), || {
        format!(
            "{} violations, first {:?}",
            s.violations.len(),
            s.violations[0]
        )
    })?;
    Ok(format!(
        "1000 gerbes ({} distinct), band (Z/2)^n with n <= 3, genus <= 4",
        s.checked
    ))
}

fn base_change() -> Check {
    let f1 = example("elliptic_family_1")?;
    let f2 = example("elliptic_family_2")?;
    ensure(f1["components"][1]["sigma_trivial"] == false, || {
        "elliptic_family_1: action at q is trivial".into()
    })?;
    ensure(f2["components"][1]["sigma_trivial"] == true, || {
        "elliptic_family_2: action at q is nontrivial".into()
    })?;
    let pairs: Vec<(GGroup, Automorphism)> = catalog(8)
        .into_iter()
        .flat_map(|(_, g)| {
            let auts = automorphisms(&g).unwrap();
            involutions(&g)
                .unwrap()
                .into_iter()
                .flat_map(|s| {
                    let gg = GGroup::new(g.clone(), s.clone()).unwrap();
                    auts.iter()
                        .filter(|w| w.compose(&s).is_involution())
                        .map(|w| (gg.clone(), w.clone()))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut rng = instance_rng(SEED, 0);
    for k in 0..100 {
        let (gg, omega) = pairs.choose(&mut rng).unwrap();
        let sigma_q = base_change_sigma(gg.sigma(), omega)
            .ok_or_else(|| format!("pair {k}: not an involution"))?;
        let back = base_change_sigma(&sigma_q, &omega.inverse());
        ensure(back.as_ref() == Some(gg.sigma()), || {
            format!("pair {k}: round trip lost σ_p")
        })?;
        let id = Automorphism::identity(gg.group());
        ensure(
            base_change_sigma(gg.sigma(), &id).as_ref() == Some(gg.sigma()),
            || format!("pair {k}: identity moved σ_p"),
        )?;
    }
    Ok("family 1 nontrivial at q, family 2 trivial at q; 100 round trips".into())
}

fn riemann_hurwitz() -> Check {
    let bands = BandCache::new(3);
    let mut checked = 0;
    for genus in [0u32, 1] {
        let sigs: Vec<_> = signatures(genus)
            .into_iter()
            .filter(|s| s.genus == genus)
            .collect();
        for i in 0..200 {
            let mut rng = instance_rng(SEED + u64::from(genus), i);
            let sig = *sigs.choose(&mut rng).unwrap();
            let n = rng.random_range(0..=3);
            let g = gerbe_with_signature(&mut rng, &bands, n, sig);
            let orbits = g.inertia_cover().orbits;
            let inertia = g.inertia_h_star().map_err(|e| e.to_string())? as i64;
            // an unramified cover of degree d multiplies the Euler characteristic by d
            let euler = 2 - 2 * i64::from(genus);
            let expected: i64 = orbits.iter().map(|d| 4 - d.len() as i64 * euler).sum();
            ensure(inertia == expected, || {
                format!("genus {genus}, instance {i}: {inertia} vs {expected}")
            })?;
            if genus == 1 {
                ensure(inertia == 4 * orbits.len() as i64, || {
                    format!("torus instance {i}: {inertia}")
                })?;
            } else {
                ensure(orbits.iter().all(|d| d.len() == 1), || {
                    format!("sphere instance {i} has a nontrivial orbit")
                })?;
                ensure(inertia == 2 * orbits.len() as i64, || {
                    format!("sphere instance {i}: {inertia}")
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} gerbes over genus 0 and 1 match the Euler characteristic count"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            1,
            "cohomology golden values",
            cohomology_goldens,
            Some(Duration::from_secs(1)),
        ),
        (
            2,
            "oracle equivalence",
            oracle_equivalence,
            Some(Duration::from_secs(60)),
        ),
        (
            3,
            "counting inequality over the catalog",
            counting_inequality,
            None,
        ),
        (4, "stacky-curve goldens", stacky_curve_goldens, None),
        (5, "inertia factorization", factorization, None),
        (6, "gerbe goldens", gerbe_goldens, None),
        (
            7,
            "2-torsion gerbe fuzz",
            gerbe_fuzz,
            Some(Duration::from_secs(60)),
        ),
        (8, "base change", base_change, None),
        (9, "Riemann-Hurwitz consistency", riemann_hurwitz, None),
    ];
    let mut failed = 0;
    for (n, name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS criterion {n}: {name} ({elapsed:.2?}) {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {n}: {name} ({elapsed:.2?}) {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
