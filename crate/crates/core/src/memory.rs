use crate::cost::PenaltyBreakdown;
use crate::timetable::Timetable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub timetable: Timetable,
    pub cost: PenaltyBreakdown,
}

/// Population of feasible timetables kept sorted by ascending total penalty.
#[derive(Debug, Clone)]
pub struct HarmonyMemory {
    members: Vec<Member>,
    capacity: usize,
}

impl HarmonyMemory {
    /// Builds a memory from members in any order. Equal totals keep their
    /// input order. Members beyond `capacity` are dropped from the worst end.
    pub fn new(mut members: Vec<Member>, capacity: usize) -> Self {
        members.sort_by_key(|m| m.cost.total);
        members.truncate(capacity);
        HarmonyMemory { members, capacity }
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// How many members short of capacity the memory is.
    pub fn shortfall(&self) -> usize {
        self.capacity - self.members.len()
    }

    pub fn best(&self) -> &Member {
        &self.members[0]
    }

    pub fn worst(&self) -> &Member {
        self.members.last().expect("empty harmony memory")
    }

    /// Admits `candidate` in place of the worst member iff its total is
    /// strictly lower. A memory below capacity admits anything. Returns
    /// whether the memory changed.
    pub fn update(&mut self, candidate: Member) -> bool {
        if self.members.len() >= self.capacity {
            if candidate.cost.total >= self.worst().cost.total {
                return false;
            }
            self.members.pop();
        }
        let at = self
            .members
            .partition_point(|m| m.cost.total <= candidate.cost.total);
        self.members.insert(at, candidate);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;
    use crate::problem::Problem;

    fn member(p: &Problem, total: u64, tag: usize) -> Member {
        let mut tt = Timetable::new(p);
        tt.place(p, 0, tag).unwrap();
        Member {
            timetable: tt,
            cost: PenaltyBreakdown {
                total,
                ..Default::default()
            },
        }
    }

    fn problem() -> Problem {
        Problem::new(
            parse_instance(
                "Name: M\nCourses: 1\nRooms: 1\nDays: 1\nPeriods_per_day: 8\nCurricula: 0\nConstraints: 0\n\
                 COURSES:\na t 1 1 1\nROOMS:\nr 1\nCURRICULA:\nUNAVAILABILITY_CONSTRAINTS:\nEND.\n",
            )
            .unwrap(),
        )
    }

    fn hm(p: &Problem) -> HarmonyMemory {
        HarmonyMemory::new(
            vec![member(p, 120, 0), member(p, 80, 1), member(p, 100, 2)],
            3,
        )
    }

    fn totals(hm: &HarmonyMemory) -> Vec<u64> {
        hm.members().iter().map(|m| m.cost.total).collect()
    }

    #[test]
    fn sorted_on_construction() {
        let p = problem();
        assert_eq!(totals(&hm(&p)), vec![80, 100, 120]);
    }

    #[test]
    fn strictly_better_replaces_worst() {
        let p = problem();
        let mut hm = hm(&p);
        assert!(hm.update(member(&p, 90, 3)));
        assert_eq!(totals(&hm), vec![80, 90, 100]);
    }

    #[test]
    fn equal_to_worst_rejected() {
        let p = problem();
        let mut hm = hm(&p);
        assert!(!hm.update(member(&p, 120, 3)));
        assert_eq!(totals(&hm), vec![80, 100, 120]);
        assert_eq!(hm.worst().timetable.course_at(0), Some(0));
    }

    #[test]
    fn worse_rejected() {
        let p = problem();
        let mut hm = hm(&p);
        assert!(!hm.update(member(&p, 130, 3)));
        assert_eq!(totals(&hm), vec![80, 100, 120]);
    }

    #[test]
    fn short_memory_fills_up() {
        let p = problem();
        let mut hm = HarmonyMemory::new(vec![member(&p, 50, 0)], 2);
        assert_eq!(hm.shortfall(), 1);
        assert!(hm.update(member(&p, 70, 1)));
        assert_eq!(totals(&hm), vec![50, 70]);
        assert_eq!(hm.shortfall(), 0);
    }
}
