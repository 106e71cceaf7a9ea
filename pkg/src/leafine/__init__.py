"""Nonisomorphic leaf-induced subtrees of topological rooted trees.

The pieces, bottom-up:

* :mod:`leafine.trees` - the immutable tree type and its text dialect
* :mod:`leafine.codes` - canonical codes and the interning table
* :mod:`leafine.induce` - single inductions and the exhaustive oracle
* :mod:`leafine.distinct` - the distinct-set dynamic program
* :mod:`leafine.fibtrees` - Fibonacci numbers and tree families
* :mod:`leafine.recurrence` - exact counts for leaf-Fibonacci trees
* :mod:`leafine.asymptotics` - the doubly exponential constants
"""
from .codes import CodeTable, canonical_code, is_isomorphic
from .distinct import count_distinct, distinct_codes, root_containing_codes
from .errors import *  # noqa: F401,F403
from .fibtrees import fibonacci, knuth_fibonacci, leaf_fibonacci
from .induce import count_labeled, enumerate_bruteforce, induce
from .recurrence import check_bounds, n_of, n_sequence
from .trees import LEAF, TopTree, height, leaf_count, parse, serialize, vertex_count

__version__ = "0.1.0"
