from .base import *
from .decision_tree import *
from .dnn import *
from .knn import *
from .lda import *
from .naive_bayes import *
from .persistence import *
from .svm import *
