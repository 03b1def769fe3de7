from .eigen import *
from .matrix import *
from .pca import *
