import re

TOKEN = re.compile(r'\s*(?:(?P<quoted>"(?:[^"\\]|\\.)*")|(?P<word>[A-Za-z_][A-Za-z_0-9.]*'
                   r'|-?\d+(?:\.\d+)?)|(?P<op>--|[{}\[\]=,;]))', re.DOTALL)


def tokenize(text: str) -> list[str]:
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = TOKEN.match(text, position)
        if match is None or match.end() == position:
            raise ValueError(f"Unexpected DOT text at {position}: {text[position:position + 20]!r}")
        tokens.append(match.group(match.lastgroup))
        position = match.end()
    return tokens


def unquote(token: str) -> str:
    if token.startswith('"'):
        return re.sub(r'\\(.)', r'\1', token[1:-1], flags=re.DOTALL)
    return token


def parse_dot(text: str) -> tuple[dict[str, dict[str, str]], list[tuple[str, str]]]:
    """
    Parse the undirected DOT subset `graph ID { stmt* }` where every
    statement is a node with an optional attribute list or a single
    `--` edge, each ended by `;`. Returns node attributes and edges with
    ids unescaped.
    """
    tokens = tokenize(text)
    if tokens[:3] != ['graph', 'G', '{'] or tokens[-1] != '}':
        raise ValueError("Not an undirected DOT graph")
    nodes: dict[str, dict[str, str]] = {}
    edges: list[tuple[str, str]] = []
    count = len(tokens) - 4
    body = tokens[3:-1] + [''] * 3
    i = 0
    while i < count:
        node = unquote(body[i])
        if body[i + 1] == '--':
            edges.append((node, unquote(body[i + 2])))
            i += 3
        else:
            attributes: dict[str, str] = {}
            i += 1
            if body[i] == '[':
                i += 1
                while body[i] not in (']', ''):
                    if body[i + 1] != '=':
                        raise ValueError(f"Bad attribute near {body[i]!r}")
                    attributes[body[i]] = unquote(body[i + 2])
                    i += 3
                    if body[i] == ',':
                        i += 1
                i += 1
            nodes[node] = attributes
        if body[i] != ';':
            raise ValueError(f"Statement not ended by ';' near {body[i]!r}")
        i += 1
    return nodes, edges
