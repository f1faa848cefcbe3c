from traversal.cursor import NodeCursor, descend_leftmost, skip_subtree
from traversal.dfs import DepthFirstEngine, SearchResult, dfs_solve
from traversal.hybrid import FrontierEntry, HybridEngine, bfs_hybrid_solve
from traversal.incumbent import IncumbentCell
