mod common;

use common::{naive_cost, random_case};
use ctt_hsa::cost::{evaluate, total_cost};
use ctt_hsa::rng::rng_from_seed;
use ctt_hsa::{parse_instance, Problem, SoftWeights, Timetable};

fn components(tt: &Timetable, problem: &Problem, w: &SoftWeights) -> [u64; 5] {
    let b = total_cost(tt, problem, w).expect("feasible");
    [
        b.room_capacity,
        b.room_stability,
        b.min_working_days,
        b.curriculum_compactness,
        b.total,
    ]
}

/// One day of four periods; rooms A (13 seats) and B (10 seats); `a` has two
/// lectures of 10 students, `b` one lecture of 13; both in one curriculum.
fn toy() -> Problem {
    Problem::new(
        parse_instance(
            "Name: Toy\nCourses: 2\nRooms: 2\nDays: 1\nPeriods_per_day: 4\nCurricula: 1\nConstraints: 0\n\n\
             COURSES:\na t1 2 1 10\nb t2 1 1 13\n\nROOMS:\nA 13\nB 10\n\n\
             CURRICULA:\nq 2 a b\n\nUNAVAILABILITY_CONSTRAINTS:\n\nEND.\n",
        )
        .unwrap(),
    )
}

fn build(problem: &Problem, placements: &[(usize, usize, usize)]) -> Timetable {
    let mut tt = Timetable::new(problem);
    for &(course, room, period) in placements {
        tt.place(problem, course, problem.dims.slot(room, period))
            .unwrap();
    }
    tt
}

#[test]
fn toy_with_everything_satisfied_costs_nothing() {
    let p = toy();
    let tt = build(&p, &[(0, 0, 0), (0, 0, 1), (1, 0, 2)]);
    let w = SoftWeights::default();
    assert_eq!(naive_cost(&p.instance, tt.slots(), &w), [0; 5]);
    assert_eq!(components(&tt, &p, &w), [0; 5]);
}

#[test]
fn toy_with_overflow_and_isolated_lecture() {
    let p = toy();
    // b moves to room B (3 students over) and period 3 (isolated).
    let tt = build(&p, &[(0, 0, 0), (0, 0, 1), (1, 1, 3)]);
    for w in [
        SoftWeights::default(),
        SoftWeights {
            capacity: 7,
            stability: 1,
            min_days: 5,
            compactness: 11,
        },
    ] {
        let expected = 3 * w.capacity + w.compactness;
        let oracle = naive_cost(&p.instance, tt.slots(), &w);
        assert_eq!(oracle[4], expected);
        assert_eq!(components(&tt, &p, &w), oracle);
    }
}

fn single_course(
    lectures: usize,
    mwd: usize,
    students: usize,
    rooms: &[usize],
    days: usize,
) -> Problem {
    let mut text = format!(
        "Name: One\nCourses: 1\nRooms: {}\nDays: {days}\nPeriods_per_day: 3\nCurricula: 1\nConstraints: 0\n\n\
         COURSES:\nx t {lectures} {mwd} {students}\n\nROOMS:\n",
        rooms.len()
    );
    for (i, cap) in rooms.iter().enumerate() {
        text.push_str(&format!("r{i} {cap}\n"));
    }
    text.push_str("\nCURRICULA:\nq 1 x\n\nUNAVAILABILITY_CONSTRAINTS:\n\nEND.\n");
    Problem::new(parse_instance(&text).unwrap())
}

#[test]
fn component_examples_agree_with_oracle() {
    let w = SoftWeights::default();
    let check = |p: &Problem, placements: &[(usize, usize, usize)], index: usize, expected: u64| {
        let tt = build(p, placements);
        let oracle = naive_cost(&p.instance, tt.slots(), &w);
        assert_eq!(oracle[index], expected, "oracle");
        assert_eq!(components(&tt, p, &w), oracle);
    };
    // Capacity: 30 students in 25 seats, one then two lectures.
    check(&single_course(1, 1, 30, &[25], 1), &[(0, 0, 0)], 0, 5);
    check(
        &single_course(2, 1, 30, &[25], 1),
        &[(0, 0, 0), (0, 0, 1)],
        0,
        10,
    );
    // Stability: three lectures over two rooms, then three rooms.
    check(
        &single_course(3, 1, 5, &[9, 9, 9], 1),
        &[(0, 0, 0), (0, 0, 1), (0, 1, 2)],
        1,
        1,
    );
    check(
        &single_course(3, 1, 5, &[9, 9, 9], 1),
        &[(0, 0, 0), (0, 1, 1), (0, 2, 2)],
        1,
        2,
    );
    // Minimum working days: three required, two then one used.
    check(
        &single_course(3, 3, 5, &[9], 3),
        &[(0, 0, 0), (0, 0, 1), (0, 0, 3)],
        2,
        5,
    );
    check(
        &single_course(3, 3, 5, &[9], 3),
        &[(0, 0, 0), (0, 0, 1), (0, 0, 2)],
        2,
        10,
    );
    // Compactness: one isolated lecture, then periods 0 and 2 of one day.
    check(&single_course(1, 1, 5, &[9], 1), &[(0, 0, 1)], 3, 2);
    check(
        &single_course(2, 1, 5, &[9], 1),
        &[(0, 0, 0), (0, 0, 2)],
        3,
        4,
    );
}

#[test]
fn compactness_does_not_wrap_across_days() {
    let p = single_course(2, 1, 5, &[9], 2);
    // Last period of day 0 and first period of day 1.
    let tt = build(&p, &[(0, 0, 2), (0, 0, 3)]);
    let oracle = naive_cost(&p.instance, tt.slots(), &SoftWeights::UNIT);
    assert_eq!(oracle[3], 2);
    assert_eq!(components(&tt, &p, &SoftWeights::UNIT), oracle);
}

#[test]
fn random_timetables_match_naive_recount() {
    let mut rng = rng_from_seed(0xC057);
    let weights = [
        SoftWeights::default(),
        SoftWeights::UNIT,
        SoftWeights {
            capacity: 3,
            stability: 0,
            min_days: 7,
            compactness: 4,
        },
    ];
    for case in 0..300 {
        let (problem, tt) = random_case(&mut rng);
        assert!(ctt_hsa::validate_hard(&tt, &problem).is_empty());
        let w = &weights[case % weights.len()];
        let oracle = naive_cost(&problem.instance, tt.slots(), w);
        assert_eq!(components(&tt, &problem, w), oracle, "case {case}");
        let unchecked = evaluate(&tt, &problem, w);
        assert_eq!(unchecked.total, oracle[4]);
    }
}
