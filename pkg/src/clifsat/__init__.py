"""SAT as idempotents of an Abelian subalgebra of Cl(R^{n,n}).

CNF formulas compile to 0/1 truth tables over the primitive idempotents;
unsatisfiability is invariance under every generator reflection.
"""
from .cnf import (Cnf, Literal, clause_split, evaluate, normalize, parse_dimacs,
                  random_ksat, restrict, write_dimacs)
from .oracle import Verdict, brute_force, dpll
from .symsolver import Detector, SignedSum, algorithm1, solve_exact_recursion, solve_symmetry
from .tabalg import IdemSet, TableElem, compile_cnf, count_models, is_symmetric_all, reflect

__version__ = "0.1.0"

__all__ = [
    "Cnf", "Literal", "clause_split", "evaluate", "normalize", "parse_dimacs",
    "random_ksat", "restrict", "write_dimacs", "Verdict", "brute_force", "dpll",
    "Detector", "SignedSum", "algorithm1", "solve_exact_recursion", "solve_symmetry",
    "IdemSet", "TableElem", "compile_cnf", "count_models", "is_symmetric_all", "reflect",
]
