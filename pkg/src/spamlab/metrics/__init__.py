from .confusion import *
from .roc import *
