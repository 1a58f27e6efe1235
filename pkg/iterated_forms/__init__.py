from iterated_forms.calculus import (d, d_iterated, d_partition, graded_commutator, homotopy_H2, include_lambda01,
                                     insert, insertion_C, kappa, lambda01_to_lambda1, lie, primitive,
                                     project_lambda01, pullback)
from iterated_forms.coeffs import Poly, SmoothMap, Space, VectorField, vf_apply, vf_bracket
from iterated_forms.errors import (DegreeError, IteratedFormsError, ParseError, SlotError, SpaceMismatchError,
                                   UnknownCoordinateError)
from iterated_forms.forms import Form, Generator, normalize, wedge
from iterated_forms.grading import IndexSet, MultiDegree, SlotPermutation, SlotShift
from iterated_forms.tensors import CovariantTensor, embed, extract, is_tensor
