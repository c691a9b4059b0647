mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use common::random_small_instance;
use ctt_hsa::construction::{next_course, CourseState};
use ctt_hsa::matrices::build_matrices;
use ctt_hsa::rng::rng_from_seed;
use ctt_hsa::timetable::{Dims, Location, EMPTY};
use ctt_hsa::{parse_instance, Problem, Timetable};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn instance_text_round_trips(seed in any::<u64>()) {
        let inst = random_small_instance(&mut rng_from_seed(seed));
        prop_assert_eq!(parse_instance(&inst.to_ctt()).unwrap(), inst);
    }

    #[test]
    fn matrices_agree_with_instance(seed in any::<u64>()) {
        let inst = random_small_instance(&mut rng_from_seed(seed));
        let m = build_matrices(&inst);
        let n = inst.courses.len();
        for a in 0..n {
            let mut degree = 0;
            for b in 0..n {
                let shared = inst.curricula.iter().filter(|q| q.courses.contains(&a) && q.courses.contains(&b)).count();
                let teacher = usize::from(inst.courses[a].teacher == inst.courses[b].teacher);
                let expected = if a == b { 0 } else { shared + teacher };
                prop_assert_eq!(m.conflict(a, b) as usize, expected);
                prop_assert_eq!(m.conflict(a, b), m.conflict(b, a));
                degree += expected;
            }
            prop_assert_eq!(m.conflict_degree(a) as usize, degree);
            let blocked: BTreeSet<usize> = inst
                .unavailabilities
                .iter()
                .filter(|u| u.course == a)
                .map(|u| u.day * inst.periods_per_day + u.period)
                .collect();
            for p in 0..inst.periods() {
                prop_assert_eq!(m.unavailable(a, p), blocked.contains(&p));
            }
            prop_assert_eq!(m.available_periods(a), inst.periods() - blocked.len());
        }
    }

    #[test]
    fn slot_index_is_a_bijection(days in 1usize..8, ppd in 1usize..10, rooms in 1usize..12) {
        let dims = Dims::new(days, ppd, rooms);
        prop_assert_eq!(dims.slots(), days * ppd * rooms);
        let mut seen = vec![false; dims.slots()];
        for room in 0..rooms {
            for day in 0..days {
                for period in 0..ppd {
                    let loc = Location { room, day, period };
                    let s = dims.slot_index(loc).unwrap();
                    prop_assert_eq!(s, room * days * ppd + day * ppd + period);
                    prop_assert!(!seen[s]);
                    seen[s] = true;
                    prop_assert_eq!(dims.location(s), loc);
                }
            }
        }
        let outside = [
            Location { room: rooms, day: 0, period: 0 },
            Location { room: 0, day: days, period: 0 },
            Location { room: 0, day: 0, period: ppd },
        ];
        for loc in outside {
            prop_assert!(dims.slot_index(loc).is_err());
        }
    }

    #[test]
    fn place_and_remove_keep_indexes_consistent(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let problem = Problem::new(random_small_instance(&mut rng));
        let dims = problem.dims;
        let mut tt = Timetable::new(&problem);
        for _ in 0..60 {
            let occupied: Vec<usize> = tt.events().map(|(s, _)| s).collect();
            if !occupied.is_empty() && rng.gen_bool(0.3) {
                let slot = *occupied.choose(&mut rng).unwrap();
                let before = tt.course_at(slot).unwrap();
                prop_assert_eq!(tt.remove(&problem, slot).unwrap(), before);
            } else {
                let course = rng.gen_range(0..problem.num_courses());
                let slot = rng.gen_range(0..dims.slots());
                let allowed = tt.is_feasible_placement(&problem, course, slot);
                prop_assert_eq!(tt.place(&problem, course, slot).is_ok(), allowed);
            }
            // Positions mirror the slot vector.
            for c in 0..problem.num_courses() {
                let mut from_slots: Vec<usize> =
                    (0..dims.slots()).filter(|&s| tt.slots()[s] == c as i32).collect();
                let mut positions = tt.positions(c).to_vec();
                positions.sort_unstable();
                from_slots.sort_unstable();
                prop_assert_eq!(&positions, &from_slots);
                prop_assert_eq!(tt.scheduled(c), from_slots.len());
            }
            prop_assert_eq!(tt.lecture_count(), tt.slots().iter().filter(|&&v| v != EMPTY).count());
            // Occupancy counters agree with a direct scan.
            for c in 0..problem.num_courses() {
                for p in 0..dims.periods() {
                    let clash = (0..dims.rooms).filter_map(|r| tt.course_at(dims.slot(r, p))).any(|o| {
                        o == c || problem.matrices.conflicts(o, c)
                    });
                    let blocked = clash || problem.matrices.unavailable(c, p);
                    prop_assert_eq!(tt.period_blocked(&problem, c, p), blocked);
                }
            }
            prop_assert!(ctt_hsa::validate_hard(&tt, &problem).iter().all(|v| v.constraint() == "H1"));
        }
    }

    #[test]
    fn next_course_ignores_input_order(
        raw in prop::collection::vec((0usize..3, 0usize..4, 0u32..3), 1..12),
        seed in any::<u64>(),
        shuffle in any::<u64>(),
    ) {
        let states: Vec<CourseState> = raw
            .iter()
            .enumerate()
            .map(|(course, &(unscheduled, available_periods, conflict_degree))| CourseState {
                course,
                unscheduled,
                available_periods,
                conflict_degree,
            })
            .collect();
        let mut shuffled = states.clone();
        shuffled.shuffle(&mut rng_from_seed(shuffle));
        let a = next_course(&states, &mut rng_from_seed(seed));
        let b = next_course(&shuffled, &mut rng_from_seed(seed));
        prop_assert_eq!(a, b);
        match a {
            None => prop_assert!(states.iter().all(|s| s.unscheduled == 0)),
            Some(c) => {
                let chosen = states[c];
                prop_assert!(chosen.unscheduled > 0);
                for s in states.iter().filter(|s| s.unscheduled > 0) {
                    prop_assert!(
                        (chosen.available_periods, std::cmp::Reverse(chosen.conflict_degree))
                            <= (s.available_periods, std::cmp::Reverse(s.conflict_degree))
                    );
                }
            }
        }
    }
}
