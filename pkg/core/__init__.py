"""
Finite fields, cosets, constacyclic codes and the constructions built on them
"""

from .aqecc import AqeccRecord, aqsb_check, build_css, css_pair, derive_params
from .blockcodes import ConstacyclicCode, LinearCode, build_family, code_from_defining_set, parity_check_matrix
from .convolutional import ConvCode, build_conv_family, free_distance_search, lift_unit_memory
from .cosets import CosetProfile, partition_Orn, predict_partition
from .distance import DistanceCertificate, certify_distance, certify_mds, min_distance_exact, relative_min_weight
from .errors import WorkbenchError
from .field import FieldOptions, build_tower, make_field
from .tables import regenerate_table

__all__ = [
    'AqeccRecord', 'aqsb_check', 'build_css', 'css_pair', 'derive_params',
    'ConstacyclicCode', 'LinearCode', 'build_family', 'code_from_defining_set', 'parity_check_matrix',
    'ConvCode', 'build_conv_family', 'free_distance_search', 'lift_unit_memory',
    'CosetProfile', 'partition_Orn', 'predict_partition',
    'DistanceCertificate', 'certify_distance', 'certify_mds', 'min_distance_exact', 'relative_min_weight',
    'WorkbenchError',
    'FieldOptions', 'build_tower', 'make_field',
    'regenerate_table',
]
