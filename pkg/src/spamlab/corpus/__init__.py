from .loader import *
from .split import *
