#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;

use ctt_hsa::instance::{Course, Curriculum, Instance, Room, Unavailability};
use ctt_hsa::rng::SearchRng;
use ctt_hsa::{parse_instance, Problem, SoftWeights, Timetable};

/// Directory holding the competition `.ctt` files. Overridable with
/// `CTT_INSTANCE_DIR`.
pub fn instance_dir() -> PathBuf {
    match std::env::var_os("CTT_INSTANCE_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/itc2007")),
    }
}

pub fn itc_path(name: &str) -> PathBuf {
    instance_dir().join(format!("{name}.ctt"))
}

pub fn load_itc(name: &str) -> Result<Problem, String> {
    let path = itc_path(name);
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let inst = parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Problem::new(inst))
}

/// Random instance with at most 8 courses, 3 rooms and 3 days.
pub fn random_small_instance(rng: &mut SearchRng) -> Instance {
    loop {
        let days = rng.gen_range(1..=3);
        let periods_per_day = rng.gen_range(1..=4);
        let periods = days * periods_per_day;
        let num_rooms = rng.gen_range(1..=3);
        let num_courses = rng.gen_range(1..=8);
        let teachers = rng.gen_range(1..=num_courses);
        let courses: Vec<Course> = (0..num_courses)
            .map(|id| Course {
                id,
                name: format!("c{id}"),
                teacher: format!("t{}", rng.gen_range(0..teachers)),
                lectures: rng.gen_range(1..=periods.min(3)),
                min_working_days: rng.gen_range(1..=days),
                students: rng.gen_range(1..=60),
            })
            .collect();
        let rooms: Vec<Room> = (0..num_rooms)
            .map(|id| Room {
                id,
                name: format!("r{id}"),
                capacity: rng.gen_range(10..=50),
            })
            .collect();
        let ids: Vec<usize> = (0..num_courses).collect();
        let curricula: Vec<Curriculum> = (0..rng.gen_range(0..=4))
            .map(|id| {
                let size = rng.gen_range(1..=num_courses.min(4));
                let mut members: Vec<usize> = ids.choose_multiple(rng, size).copied().collect();
                members.sort_unstable();
                Curriculum {
                    id,
                    name: format!("q{id}"),
                    courses: members,
                }
            })
            .collect();
        let mut unavailabilities = Vec::new();
        for c in 0..num_courses {
            for p in 0..periods {
                if rng.gen_bool(0.15) {
                    unavailabilities.push(Unavailability {
                        course: c,
                        day: p / periods_per_day,
                        period: p % periods_per_day,
                    });
                }
            }
        }
        let inst = Instance {
            name: "rand".into(),
            days,
            periods_per_day,
            courses,
            rooms,
            curricula,
            unavailabilities,
        };
        if inst.check().is_ok() {
            return inst;
        }
    }
}

/// Places every lecture, in shuffled order, at a uniformly chosen feasible
/// slot. `None` on a dead end.
pub fn random_feasible(problem: &Problem, rng: &mut SearchRng) -> Option<Timetable> {
    let mut lectures: Vec<usize> = (0..problem.num_courses())
        .flat_map(|c| std::iter::repeat_n(c, problem.lectures(c)))
        .collect();
    lectures.shuffle(rng);
    let mut tt = Timetable::new(problem);
    for c in lectures {
        let options: Vec<usize> = (0..problem.dims.slots())
            .filter(|&s| tt.is_feasible_placement(problem, c, s))
            .collect();
        let &slot = options.choose(rng)?;
        tt.place(problem, c, slot).expect("slot was feasible");
    }
    Some(tt)
}

/// A random small instance together with a random feasible timetable.
pub fn random_case(rng: &mut SearchRng) -> (Problem, Timetable) {
    loop {
        let problem = Problem::new(random_small_instance(rng));
        for _ in 0..5 {
            if let Some(tt) = random_feasible(&problem, rng) {
                return (problem, tt);
            }
        }
    }
}

/// Soft penalties recounted from scratch: capacity, stability, minimum
/// working days, compactness, total.
pub fn naive_cost(inst: &Instance, slots: &[i32], w: &SoftWeights) -> [u64; 5] {
    let periods = inst.days * inst.periods_per_day;
    // (course, room, day, period) for every lecture.
    let mut lectures = Vec::new();
    for (slot, &value) in slots.iter().enumerate() {
        if value >= 0 {
            let room = slot / periods;
            let day = (slot % periods) / inst.periods_per_day;
            let period = slot % inst.periods_per_day;
            lectures.push((value as usize, room, day, period));
        }
    }

    let mut capacity = 0;
    for &(c, r, _, _) in &lectures {
        let students = inst.courses[c].students as u64;
        let seats = inst.rooms[r].capacity as u64;
        if students > seats {
            capacity += students - seats;
        }
    }

    let mut stability = 0;
    let mut min_days = 0;
    for course in &inst.courses {
        let mine: Vec<_> = lectures.iter().filter(|l| l.0 == course.id).collect();
        let rooms: BTreeSet<usize> = mine.iter().map(|l| l.1).collect();
        let days: BTreeSet<usize> = mine.iter().map(|l| l.2).collect();
        if !rooms.is_empty() {
            stability += rooms.len() as u64 - 1;
        }
        if days.len() < course.min_working_days {
            min_days += (course.min_working_days - days.len()) as u64;
        }
    }

    let mut compactness = 0;
    for q in &inst.curricula {
        // day -> periods holding a lecture of this curriculum, with multiplicity.
        let mut busy: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for &(c, _, d, p) in &lectures {
            if q.courses.contains(&c) {
                *busy.entry((d, p)).or_default() += 1;
            }
        }
        for (&(d, p), &count) in &busy {
            let before = p > 0 && busy.contains_key(&(d, p - 1));
            let after = busy.contains_key(&(d, p + 1));
            if !before && !after {
                compactness += count;
            }
        }
    }

    let parts = [
        capacity * w.capacity,
        stability * w.stability,
        min_days * w.min_days,
        compactness * w.compactness,
    ];
    [parts[0], parts[1], parts[2], parts[3], parts.iter().sum()]
}

/// Per-course lecture counts.
pub fn lecture_multiset(slots: &[i32]) -> BTreeMap<i32, usize> {
    let mut m = BTreeMap::new();
    for &v in slots {
        if v >= 0 {
            *m.entry(v).or_default() += 1;
        }
    }
    m
}
