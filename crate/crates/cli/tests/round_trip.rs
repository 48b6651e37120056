use moore_algebra::ring::RingSpec;
use moore_algebra::{CommSeries, Derivation, GradingContext, Letter, NcSeries, Ring, RingElement, Scalar, Word};
use moore_cli::parse::{parse_derivation, parse_nc_series, parse_ring, parse_ring_spec, parse_series};
use num_rational::BigRational;
use proptest::prelude::*;

const SPECS: [&str; 6] = ["Q", "Z", "Z/6", "Q[x:0,y:0;3]", "Q{eps:0}", "Q[a:0;2]{x:0}"];

fn ring(i: usize) -> Ring {
    parse_ring(SPECS[i]).unwrap()
}

fn element(ring: &Ring, coords: &[(i64, i64)]) -> RingElement {
    let n = RingElement::module_basis(ring).len();
    let rational = *ring.base_kind() == moore_algebra::ring::BaseKind::Rationals;
    let c: Vec<BigRational> = (0..n)
        .map(|i| {
            let (a, b) = coords[i % coords.len()];
            let b = if rational { b } else { 1 };
            BigRational::new(a.into(), b.into())
        })
        .collect();
    RingElement::from_coordinates(ring, &c)
}

fn word(code: u32, len: usize) -> Word {
    let letters: Vec<Letter> = (0..len).map(|i| if code >> i & 1 == 1 { Letter::Tau } else { Letter::T }).collect();
    Word::from_letters(&letters)
}

type Terms = Vec<(u32, usize, Vec<(i64, i64)>)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((any::<u32>(), 1usize..6, prop::collection::vec((-9i64..10, 1i64..7), 1..4)), 0..6)
}

fn nc(ring: &Ring, ctx: GradingContext, ts: &Terms) -> NcSeries<RingElement> {
    NcSeries::from_terms(ring, ctx, ts.iter().map(|(code, len, c)| (word(*code, *len), element(ring, c))))
}

fn comm(ring: &Ring, ctx: GradingContext, ts: &Terms) -> CommSeries<RingElement> {
    ts.iter().fold(CommSeries::zero(ring, ctx), |acc, (_, k, c)| acc.add(&CommSeries::monomial(ring, ctx, *k, element(ring, c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_print_and_parse_back(which in 0usize..6, odd in any::<bool>(), ts in terms()) {
        let r = ring(which);
        let ctx = GradingContext::new(i64::from(odd), 6).unwrap();
        let s = nc(&r, ctx, &ts);
        let back = parse_nc_series(&s.to_string(), &r, ctx).unwrap();
        prop_assert!(back.agrees_with(&s), "{} became {}", s, back);
        let c = comm(&r, ctx, &ts);
        let back = parse_series(&c.to_string(), &r, ctx, false).unwrap();
        prop_assert!(back.agrees_with(&c), "{} became {}", c, back);
    }

    #[test]
    fn derivations_print_and_parse_back(which in 0usize..6, odd in any::<bool>(), a in terms(), b in terms()) {
        let r = ring(which);
        let ctx = GradingContext::new(i64::from(odd), 6).unwrap();
        let d = Derivation::new(nc(&r, ctx, &a), nc(&r, ctx, &b)).unwrap();
        let back = parse_derivation(&d.to_string(), &r, ctx).unwrap();
        prop_assert!(back.agrees_with(&d), "{} became {}", d, back);
    }

    #[test]
    fn ring_specs_print_and_parse_back(which in 0usize..6, layers in prop::collection::vec((any::<bool>(), 0i64..3, 1u32..4), 0..3)) {
        let mut spec = parse_ring_spec(SPECS[which]).unwrap();
        for (i, (square_zero, half_degree, m)) in layers.into_iter().enumerate() {
            let gens = vec![moore_algebra::Generator::new(format!("g{i}"), 2 * half_degree)];
            spec = if square_zero { RingSpec::square_zero(spec, gens) } else { RingSpec::polynomial(spec, gens, m) };
        }
        prop_assert_eq!(parse_ring_spec(&spec.to_string()).unwrap(), spec);
    }
}
