"""
Feed-forward networks with DRN, BQN, and HEN output heads
"""

from .activations import ACTIVATIONS, softplus, softplus_inv
from .config import NetConfig
from .ensemble import DeepEnsemble
from .heads import BernsteinHead, Head, HistogramHead, NormalHead, loss, make_head
from .io import load_model, model_from_bytes, model_to_bytes, save_model
from .network import NetModel, forward
from .training import Adam, hen_edges_from_targets, train_ensemble, train_member
